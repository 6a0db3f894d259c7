#include "pptd/entropy.hpp"

#include <cmath>
#include <limits>

#include "pptd/errors.hpp"

namespace pptd {

namespace {

double xlog2x(double x) { return x > kEigenTolerance ? x * std::log2(x) : 0.0; }

}  // namespace

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) h -= xlog2x(p);
  return h;
}

double von_neumann_entropy(const HermitianOperator& rho) {
  const RVector ev = rho.eigenvalues();
  return shannon_entropy(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("relative_entropy: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.matrix());
  if (es.info() != Eigen::Success) throw SolverError("eigendecomposition failed");
  const RVector& lam = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();

  // Diagonal of rho in the eigenbasis of sigma: <v_k| rho |v_k>.
  const CMatrix rotated = v.adjoint() * rho.matrix() * v;
  double cross = 0.0;  // Tr(rho log2 sigma)
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const double weight = rotated(k, k).real();
    if (lam(k) > kEigenTolerance) {
      cross += weight * std::log2(lam(k));
    } else if (weight > kEigenTolerance) {
      return std::numeric_limits<double>::infinity();
    }
  }
  const double s = -von_neumann_entropy(rho) - cross;
  return (s < 0.0 && s > -1e-12) ? 0.0 : s;
}

}  // namespace pptd
