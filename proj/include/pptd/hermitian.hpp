#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pptd/tensor_shape.hpp"

namespace pptd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Eigenvalues within this distance of zero are treated as zero by the
/// positive/negative part splits and by the entropy functionals.
inline constexpr double kEigenTolerance = 1e-10;

/// Dense Hermitian matrix carrying a tensor factorization of its space.
///
/// Construction checks Hermiticity: a drift |A - A^dagger| up to 1e-12 (relative
/// to max |entry|) is removed by replacing A with (A + A^dagger)/2, anything
/// larger is rejected.
class HermitianOperator {
 public:
  HermitianOperator(TensorShape shape, CMatrix entries);

  /// Builds from the Hermitian part of `entries` without the drift check.
  /// For library code whose output is Hermitian up to roundoff by construction.
  static HermitianOperator from_hermitian_part(TensorShape shape, const CMatrix& entries);

  static HermitianOperator identity(TensorShape shape);
  static HermitianOperator zero(TensorShape shape);

  [[nodiscard]] const TensorShape& shape() const { return shape_; }
  [[nodiscard]] const CMatrix& matrix() const { return entries_; }
  [[nodiscard]] int dim() const { return static_cast<int>(entries_.rows()); }

  [[nodiscard]] double trace() const { return entries_.trace().real(); }
  /// Ascending eigenvalues.
  [[nodiscard]] RVector eigenvalues() const;
  [[nodiscard]] bool is_real(double tol = 1e-14) const;

  HermitianOperator& operator+=(const HermitianOperator& other);
  HermitianOperator& operator-=(const HermitianOperator& other);
  HermitianOperator& operator*=(double scale);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    return a += b;
  }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    return a -= b;
  }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }

 private:
  struct Trusted {};
  HermitianOperator(TensorShape shape, CMatrix entries, Trusted);

  TensorShape shape_;
  CMatrix entries_;
};

/// Positive semidefinite, unit-trace Hermitian operator (min eigenvalue
/// >= -1e-10, |trace - 1| <= 1e-10).
class DensityMatrix : public HermitianOperator {
 public:
  explicit DensityMatrix(HermitianOperator op);
  DensityMatrix(TensorShape shape, CMatrix entries);
};

/// k x k PSD matrix with unit trace; the coefficient matrix of a maximally
/// correlated state.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(CMatrix alpha);
  [[nodiscard]] const CMatrix& matrix() const { return alpha_; }
  [[nodiscard]] int size() const { return static_cast<int>(alpha_.rows()); }

 private:
  CMatrix alpha_;
};

/// Real trace Tr(A B).
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Kronecker product; the shape is `a.shape().tensor(b.shape())`.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
/// n-fold tensor power (n >= 1).
DensityMatrix tensor_power(const DensityMatrix& rho, int n);

/// Partial transpose on the listed subsystems.
HermitianOperator partial_transpose(const HermitianOperator& a, std::span<const int> subsystems);
/// Partial transpose on side B of the operator's bipartition.
HermitianOperator partial_transpose(const HermitianOperator& a);

/// Traces out the listed subsystems. The survivors keep their side labels
/// when both sides survive; otherwise the result has no bipartition.
HermitianOperator partial_trace(const HermitianOperator& a, std::span<const int> subsystems);

/// Index permutation realised by the partial transpose: entry (r, c) of A
/// lands at position (out[r*N + c] / N, out[r*N + c] % N) of A^Gamma.
std::vector<int> partial_transpose_map(const TensorShape& shape, std::span<const int> subsystems);

HermitianOperator pos_part(const HermitianOperator& a);
HermitianOperator neg_part(const HermitianOperator& a);
HermitianOperator abs_part(const HermitianOperator& a);
/// Tr|A|.
double trace_norm(const HermitianOperator& a);
/// Largest eigenvalue of |A|.
double operator_norm(const HermitianOperator& a);

}  // namespace pptd
