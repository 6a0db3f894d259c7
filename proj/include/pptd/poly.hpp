#pragma once

#include <vector>

#include "pptd/hermitian.hpp"

namespace pptd {

/// Homogeneous polynomial of degree n in (x, y); coeffs[k] multiplies
/// x^(n-k) y^k.
class HomogeneousPoly {
 public:
  HomogeneousPoly() = default;
  explicit HomogeneousPoly(RVector coeffs);
  static HomogeneousPoly zero(int degree);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const RVector& coeffs() const { return coeffs_; }
  [[nodiscard]] double operator[](int k) const { return coeffs_(k); }
  [[nodiscard]] double evaluate(double x, double y) const;

  HomogeneousPoly& operator+=(const HomogeneousPoly& other);
  HomogeneousPoly& operator-=(const HomogeneousPoly& other);
  HomogeneousPoly& operator*=(double s);
  friend HomogeneousPoly operator+(HomogeneousPoly a, const HomogeneousPoly& b) { return a += b; }
  friend HomogeneousPoly operator-(HomogeneousPoly a, const HomogeneousPoly& b) { return a -= b; }
  friend HomogeneousPoly operator*(double s, HomogeneousPoly a) { return a *= s; }

 private:
  RVector coeffs_;
};

/// Coefficient slack used by the componentwise order.
inline constexpr double kCoeffTolerance = 1e-9;

/// A <= B coefficientwise: every coefficient of B - A is >= -tol.
bool coeff_leq(const HomogeneousPoly& a, const HomogeneousPoly& b, double tol = kCoeffTolerance);
/// A >= 0 coefficientwise.
bool coeff_nonneg(const HomogeneousPoly& a, double tol = kCoeffTolerance);

/// (a x + b y)^n.
HomogeneousPoly linear_form_power(double a, double b, int n);

/// Matrix T with coeffs(B(m11 x + m12 y, m21 x + m22 y)) = T coeffs(B) for
/// degree-n B.
RMatrix substitution_matrix(int n, double m11, double m12, double m21, double m22);

/// B(m11 x + m12 y, m21 x + m22 y).
HomogeneousPoly poly_substitute(const HomogeneousPoly& b, double m11, double m12, double m21,
                                double m22);

/// Binomial coefficient as a double (exact up to n = 60 or so).
double binomial(int n, int k);

}  // namespace pptd
