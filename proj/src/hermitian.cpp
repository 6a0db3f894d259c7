#include "pptd/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "pptd/errors.hpp"

namespace pptd {

namespace {

constexpr double kHermitianDrift = 1e-12;

// Digits of a flat index in the mixed radix given by `dims`.
std::vector<int> digits_of(int index, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

int index_of(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

Eigen::SelfAdjointEigenSolver<CMatrix> eigensolve(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw SolverError("eigendecomposition failed");
  return es;
}

// Rebuilds V diag(f(lambda)) V^dagger.
template <class F>
HermitianOperator spectral_map(const HermitianOperator& a, F&& f) {
  auto es = eigensolve(a);
  RVector mapped = es.eigenvalues().unaryExpr(f);
  CMatrix m = es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
  return HermitianOperator::from_hermitian_part(a.shape(), m);
}

}  // namespace

HermitianOperator::HermitianOperator(TensorShape shape, CMatrix entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw InvalidArgument("operator matrix must be square");
  if (entries_.rows() != shape_.total_dim()) {
    throw InvalidArgument("operator dimension " + std::to_string(entries_.rows()) +
                          " does not match shape dimension " +
                          std::to_string(shape_.total_dim()));
  }
  if (!entries_.allFinite()) throw InvalidArgument("operator has non-finite entries");
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double drift = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (drift > kHermitianDrift * std::max(scale, 1e-300) && drift > 0.0) {
    throw InvalidArgument("operator is not Hermitian (drift " + std::to_string(drift) + ")");
  }
  entries_ = (entries_ + entries_.adjoint()).eval() * 0.5;
}

HermitianOperator::HermitianOperator(TensorShape shape, CMatrix entries, Trusted)
    : shape_(std::move(shape)), entries_(std::move(entries)) {}

HermitianOperator HermitianOperator::from_hermitian_part(TensorShape shape,
                                                         const CMatrix& entries) {
  if (entries.rows() != shape.total_dim() || entries.cols() != shape.total_dim()) {
    throw InvalidArgument("operator dimension does not match shape");
  }
  CMatrix h = (entries + entries.adjoint()) * 0.5;
  return HermitianOperator(std::move(shape), std::move(h), Trusted{});
}

HermitianOperator HermitianOperator::identity(TensorShape shape) {
  const int n = shape.total_dim();
  return HermitianOperator(std::move(shape), CMatrix::Identity(n, n), Trusted{});
}

HermitianOperator HermitianOperator::zero(TensorShape shape) {
  const int n = shape.total_dim();
  return HermitianOperator(std::move(shape), CMatrix::Zero(n, n), Trusted{});
}

RVector HermitianOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("eigendecomposition failed");
  return es.eigenvalues();
}

bool HermitianOperator::is_real(double tol) const {
  if (entries_.size() == 0) return true;
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  return entries_.imag().cwiseAbs().maxCoeff() <= tol * scale;
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  if (!(shape_ == other.shape_)) throw InvalidArgument("operator shapes differ");
  entries_ += other.entries_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& other) {
  if (!(shape_ == other.shape_)) throw InvalidArgument("operator shapes differ");
  entries_ -= other.entries_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double scale) {
  entries_ *= scale;
  return *this;
}

DensityMatrix::DensityMatrix(HermitianOperator op) : HermitianOperator(std::move(op)) {
  if (std::abs(trace() - 1.0) > 1e-10) {
    throw InvalidArgument("density matrix must have unit trace (got " +
                          std::to_string(trace()) + ")");
  }
  if (dim() > 0 && eigenvalues()(0) < -kEigenTolerance) {
    throw InvalidArgument("density matrix must be positive semidefinite (min eigenvalue " +
                          std::to_string(eigenvalues()(0)) + ")");
  }
}

DensityMatrix::DensityMatrix(TensorShape shape, CMatrix entries)
    : DensityMatrix(HermitianOperator(std::move(shape), std::move(entries))) {}

CorrelationMatrix::CorrelationMatrix(CMatrix alpha) : alpha_(std::move(alpha)) {
  // Reuse the Hermitian/PSD/trace checks of DensityMatrix on a single system.
  const int k = static_cast<int>(alpha_.rows());
  if (k < 1 || alpha_.cols() != k) throw InvalidArgument("correlation matrix must be square");
  DensityMatrix checked(TensorShape(k), alpha_);
  alpha_ = checked.matrix();
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("trace_product: dimension mismatch");
  // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  const CMatrix& x = a.matrix();
  const CMatrix& y = b.matrix();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return HermitianOperator::from_hermitian_part(a.shape().tensor(b.shape()), out);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(static_cast<const HermitianOperator&>(a),
                              static_cast<const HermitianOperator&>(b)));
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
  if (n < 1) throw InvalidArgument("tensor_power: n must be at least 1");
  DensityMatrix out = rho;
  for (int k = 1; k < n; ++k) out = tensor(out, rho);
  return out;
}

std::vector<int> partial_transpose_map(const TensorShape& shape,
                                       std::span<const int> subsystems) {
  shape.check_selection(subsystems);
  const int n = shape.total_dim();
  const auto& dims = shape.dims();
  std::vector<char> selected(dims.size(), 0);
  for (int k : subsystems) selected[k] = 1;

  std::vector<std::vector<int>> digits(n);
  for (int i = 0; i < n; ++i) digits[i] = digits_of(i, dims);

  std::vector<int> out(static_cast<std::size_t>(n) * n);
  std::vector<int> rd(dims.size());
  std::vector<int> cd(dims.size());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (selected[k]) {
          rd[k] = digits[c][k];
          cd[k] = digits[r][k];
        } else {
          rd[k] = digits[r][k];
          cd[k] = digits[c][k];
        }
      }
      out[static_cast<std::size_t>(r) * n + c] = index_of(rd, dims) * n + index_of(cd, dims);
    }
  }
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& a, std::span<const int> subsystems) {
  const auto map = partial_transpose_map(a.shape(), subsystems);
  const int n = a.dim();
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int target = map[static_cast<std::size_t>(r) * n + c];
      out(target / n, target % n) = a.matrix()(r, c);
    }
  }
  return HermitianOperator::from_hermitian_part(a.shape(), out);
}

HermitianOperator partial_transpose(const HermitianOperator& a) {
  if (!a.shape().is_bipartite()) {
    throw InvalidArgument("partial_transpose: operator has no bipartition");
  }
  return partial_transpose(a, a.shape().side_b());
}

HermitianOperator partial_trace(const HermitianOperator& a, std::span<const int> subsystems) {
  const TensorShape& shape = a.shape();
  shape.check_selection(subsystems);
  if (subsystems.empty()) return a;
  const auto& dims = shape.dims();
  std::vector<char> traced(dims.size(), 0);
  for (int k : subsystems) traced[k] = 1;
  if (static_cast<std::size_t>(subsystems.size()) == dims.size()) {
    throw InvalidArgument("partial_trace: cannot trace out every subsystem");
  }

  std::vector<int> kept_dims;
  std::vector<int> kept_side_b;
  bool kept_a = false;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (traced[k]) continue;
    if (shape.in_side_b(static_cast<int>(k))) {
      kept_side_b.push_back(static_cast<int>(kept_dims.size()));
    } else {
      kept_a = true;
    }
    kept_dims.push_back(dims[k]);
  }
  if (!kept_a) kept_side_b.clear();
  TensorShape out_shape(kept_dims, kept_side_b);

  const int n = a.dim();
  const int m = out_shape.total_dim();
  CMatrix out = CMatrix::Zero(m, m);
  std::vector<int> kept_r;
  std::vector<int> kept_c;
  for (int r = 0; r < n; ++r) {
    const auto rd = digits_of(r, dims);
    for (int c = 0; c < n; ++c) {
      const auto cd = digits_of(c, dims);
      bool diagonal_in_traced = true;
      kept_r.clear();
      kept_c.clear();
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (traced[k]) {
          if (rd[k] != cd[k]) {
            diagonal_in_traced = false;
            break;
          }
        } else {
          kept_r.push_back(rd[k]);
          kept_c.push_back(cd[k]);
        }
      }
      if (!diagonal_in_traced) continue;
      out(index_of(kept_r, kept_dims), index_of(kept_c, kept_dims)) += a.matrix()(r, c);
    }
  }
  return HermitianOperator::from_hermitian_part(std::move(out_shape), out);
}

HermitianOperator pos_part(const HermitianOperator& a) {
  return spectral_map(a, [](double x) { return x > kEigenTolerance ? x : 0.0; });
}

HermitianOperator neg_part(const HermitianOperator& a) {
  return spectral_map(a, [](double x) { return x < -kEigenTolerance ? -x : 0.0; });
}

HermitianOperator abs_part(const HermitianOperator& a) {
  return spectral_map(a, [](double x) { return std::abs(x) > kEigenTolerance ? std::abs(x) : 0.0; });
}

double trace_norm(const HermitianOperator& a) {
  return a.eigenvalues().cwiseAbs().sum();
}

double operator_norm(const HermitianOperator& a) {
  if (a.dim() == 0) return 0.0;
  return a.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace pptd
