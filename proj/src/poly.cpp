#include "pptd/poly.hpp"

#include <cmath>

#include "pptd/errors.hpp"

namespace pptd {

HomogeneousPoly::HomogeneousPoly(RVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) throw InvalidArgument("HomogeneousPoly needs at least one coefficient");
  if (!coeffs_.allFinite()) throw InvalidArgument("HomogeneousPoly has non-finite coefficients");
}

HomogeneousPoly HomogeneousPoly::zero(int degree) {
  if (degree < 0) throw InvalidArgument("HomogeneousPoly: negative degree");
  return HomogeneousPoly(RVector::Zero(degree + 1));
}

double HomogeneousPoly::evaluate(double x, double y) const {
  const int n = degree();
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) acc += coeffs_(k) * std::pow(x, n - k) * std::pow(y, k);
  return acc;
}

HomogeneousPoly& HomogeneousPoly::operator+=(const HomogeneousPoly& other) {
  if (other.degree() != degree()) throw InvalidArgument("HomogeneousPoly: degree mismatch");
  coeffs_ += other.coeffs_;
  return *this;
}

HomogeneousPoly& HomogeneousPoly::operator-=(const HomogeneousPoly& other) {
  if (other.degree() != degree()) throw InvalidArgument("HomogeneousPoly: degree mismatch");
  coeffs_ -= other.coeffs_;
  return *this;
}

HomogeneousPoly& HomogeneousPoly::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

bool coeff_leq(const HomogeneousPoly& a, const HomogeneousPoly& b, double tol) {
  if (a.degree() != b.degree()) throw InvalidArgument("coeff_leq: degree mismatch");
  return (b.coeffs() - a.coeffs()).minCoeff() >= -tol;
}

bool coeff_nonneg(const HomogeneousPoly& a, double tol) { return a.coeffs().minCoeff() >= -tol; }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

HomogeneousPoly linear_form_power(double a, double b, int n) {
  if (n < 0) throw InvalidArgument("linear_form_power: negative degree");
  RVector c(n + 1);
  for (int k = 0; k <= n; ++k) c(k) = binomial(n, k) * std::pow(a, n - k) * std::pow(b, k);
  return HomogeneousPoly(std::move(c));
}

RMatrix substitution_matrix(int n, double m11, double m12, double m21, double m22) {
  if (n < 0) throw InvalidArgument("substitution_matrix: negative degree");
  RMatrix t = RMatrix::Zero(n + 1, n + 1);
  for (int lambda = 0; lambda <= n; ++lambda) {
    // (m11 x + m12 y)^(n - lambda) (m21 x + m22 y)^lambda
    const RVector u = linear_form_power(m11, m12, n - lambda).coeffs();
    const RVector v = linear_form_power(m21, m22, lambda).coeffs();
    for (int i = 0; i < u.size(); ++i) {
      for (int j = 0; j < v.size(); ++j) t(i + j, lambda) += u(i) * v(j);
    }
  }
  return t;
}

HomogeneousPoly poly_substitute(const HomogeneousPoly& b, double m11, double m12, double m21,
                                double m22) {
  return HomogeneousPoly(substitution_matrix(b.degree(), m11, m12, m21, m22) * b.coeffs());
}

}  // namespace pptd
