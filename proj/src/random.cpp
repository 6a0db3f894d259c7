#include "pptd/random.hpp"

#include <cmath>

namespace pptd {

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

CMatrix haar_unitary(int dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

DensityMatrix random_density_matrix(const TensorShape& shape, Rng& rng, int rank) {
  const int n = shape.total_dim();
  const int k = rank <= 0 ? n : rank;
  const CMatrix g = ginibre(n, k, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianOperator::from_hermitian_part(shape, rho));
}

DensityMatrix random_real_density_matrix(const TensorShape& shape, Rng& rng) {
  const int n = shape.total_dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  RMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  RMatrix rho = g * g.transpose();
  rho /= rho.trace();
  return DensityMatrix(HermitianOperator::from_hermitian_part(shape, rho.cast<Complex>()));
}

HermitianOperator random_hermitian(const TensorShape& shape, Rng& rng) {
  const int n = shape.total_dim();
  const CMatrix g = ginibre(n, n, rng);
  return HermitianOperator::from_hermitian_part(shape, g);
}

}  // namespace pptd
