#include "pptd/states.hpp"

#include <cmath>

#include "pptd/errors.hpp"

namespace pptd {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in [0, 1] (got " + std::to_string(v) +
                          ")");
  }
}

void check_square_bipartite(const HermitianOperator& a, int dim, const char* what) {
  if (a.dim() != dim * dim) {
    throw InvalidArgument(std::string(what) + ": operator must act on C^" + std::to_string(dim) +
                          " (x) C^" + std::to_string(dim));
  }
}

}  // namespace

DensityMatrix max_entangled(int dim) {
  if (dim < 1) throw InvalidArgument("max_entangled: dimension must be at least 1");
  const int n = dim * dim;
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i * dim + i, j * dim + j) = 1.0 / dim;
  }
  return DensityMatrix(TensorShape::bipartite(dim, dim), std::move(m));
}

HermitianOperator swap_operator(int dim) {
  if (dim < 1) throw InvalidArgument("swap_operator: dimension must be at least 1");
  const int n = dim * dim;
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i * dim + j, j * dim + i) = 1.0;
  }
  return HermitianOperator(TensorShape::bipartite(dim, dim), std::move(m));
}

double maxent_fidelity(const HermitianOperator& a) {
  const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(a.dim()))));
  check_square_bipartite(a, dim, "maxent_fidelity");
  Complex acc = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) acc += a.matrix()(j * dim + j, i * dim + i);
  }
  return acc.real() / dim;
}

DensityMatrix isotropic_state(int dim, double fidelity) {
  if (dim < 2) throw InvalidArgument("isotropic_state: dimension must be at least 2");
  check_unit_interval(fidelity, "isotropic_state: fidelity");
  const int n = dim * dim;
  const CMatrix phi = max_entangled(dim).matrix();
  const double off = (1.0 - fidelity) / (n - 1);
  CMatrix m = fidelity * phi + off * (CMatrix::Identity(n, n) - phi);
  return DensityMatrix(TensorShape::bipartite(dim, dim), std::move(m));
}

DensityMatrix werner_state(int dim, double antisym_weight) {
  if (dim < 2) throw InvalidArgument("werner_state: dimension must be at least 2");
  check_unit_interval(antisym_weight, "werner_state: p");
  const int n = dim * dim;
  const double p = antisym_weight;
  const CMatrix swap = swap_operator(dim).matrix();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix m = (1.0 - p) / (n + dim) * (id + swap) + p / (n - dim) * (id - swap);
  return DensityMatrix(TensorShape::bipartite(dim, dim), std::move(m));
}

DensityMatrix max_correlated_state(const CorrelationMatrix& alpha) {
  const int k = alpha.size();
  const int n = k * k;
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m(i * k + i, j * k + j) = alpha.matrix()(i, j);
  }
  return DensityMatrix(TensorShape::bipartite(k, k), std::move(m));
}

HermitianOperator twirl(const HermitianOperator& a, int dim) {
  if (dim < 1) throw InvalidArgument("twirl: dimension must be at least 1");
  check_square_bipartite(a, dim, "twirl");
  if (dim == 1) return a;
  const int n = dim * dim;
  const double fid = maxent_fidelity(a);
  const double rest = a.trace() - fid;
  const CMatrix phi = max_entangled(dim).matrix();
  CMatrix m = fid * phi + rest / (n - 1) * (CMatrix::Identity(n, n) - phi);
  return HermitianOperator::from_hermitian_part(a.shape(), m);
}

}  // namespace pptd
