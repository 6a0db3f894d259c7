#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pptd/hermitian.hpp"
#include "pptd/poly.hpp"

namespace pptd {

enum class BoundKind { Upper, Lower };
std::string_view to_string(BoundKind kind);

/// One bound on the p.p.t. distillable entanglement, in bits.
struct BoundReport {
  std::string name;
  double value;
  BoundKind kind;
  std::string provenance;  ///< which result produced the value
  std::optional<HermitianOperator> operator_witness;
  std::optional<HomogeneousPoly> poly_witness;
};

/// True when every lower bound is <= every upper bound + tol.
bool bounds_consistent(const std::vector<BoundReport>& reports, double tol = 1e-6);

/// B(rho, sigma) = S(rho || sigma) + log2 Tr|sigma^Gamma|; +infinity when the
/// support of rho is not inside that of sigma.
double rains_bound(const DensityMatrix& rho, const DensityMatrix& sigma);

struct RainsPropertyReport {
  double base;               ///< B(rho, sigma)
  double twirled;            ///< B(T(rho), T(sigma)), T the isotropic twirl
  double mixture;            ///< B(p rho + (1-p) rho2, sigma)
  double mixture_average;    ///< p B(rho, sigma) + (1-p) B(rho2, sigma)
  double product;            ///< B(rho (x) rho2, sigma (x) sigma)
  double product_sum;        ///< B(rho, sigma) + B(rho2, sigma)
  bool twirl_monotone;
  bool convex;
  bool additive;
};

/// Twirl monotonicity, convexity in the first argument and tensor
/// additivity of B, each checked to 1e-8. rho, sigma, rho2 act on C^d (x) C^d.
RainsPropertyReport rains_bound_properties_check(const DensityMatrix& rho,
                                                 const DensityMatrix& sigma,
                                                 const DensityMatrix& rho2, double p);

/// Orthogonal projections summing to the identity; validated to 1e-9.
class PartitionOfIdentity {
 public:
  explicit PartitionOfIdentity(std::vector<HermitianOperator> projectors);
  [[nodiscard]] const std::vector<HermitianOperator>& projectors() const { return projectors_; }

 private:
  std::vector<HermitianOperator> projectors_;
};

struct PartitionTerm {
  double r;  ///< Tr(P_i rho)
  double s;  ///< largest eigenvalue of |P_i^Gamma|
};

/// sum_i r_i (log2 r_i - log2 s_i); terms with r_i < 1e-12 contribute 0.
double partition_lower_bound(const DensityMatrix& rho, const PartitionOfIdentity& partition,
                             std::vector<PartitionTerm>* terms = nullptr);

/// F_n(w): sum of the products of Phi(d) and 1 - Phi(d) over n pairs with at
/// most w factors 1 - Phi(d).
struct HashingCertificate {
  int d;
  int n;
  int w;
  HermitianOperator F;
  double negativity_bound;   ///< d^-n sum_{i<=w} C(n,i) (d+1)^i
  double pt_trace_norm;      ///< Tr|F^Gamma|
  double pt_operator_norm;   ///< largest eigenvalue of |F^Gamma|

  /// sum_{i<=w} C(n,i) f^(n-i) (1-f)^i, which equals Tr(F I_d(f)^n).
  [[nodiscard]] double binomial_fidelity(double f) const;
};

/// Builds F_n(w) densely; requires d^(2n) <= 4096.
HashingCertificate hashing_projector(int d, int n, int w);

/// max(log2 d + f log2 f + (1-f) log2((1-f)/(d+1)), 0) for 1/2 <= f <= 1.
double hashing_rate(int d, double f);

/// H(alpha_11, ..., alpha_kk) - S(alpha).
double max_correlated_rate(const CorrelationMatrix& alpha);

/// Eigenvalues of rho_beta^Gamma from the entries of beta: beta_ii and
/// +-|beta_ij| (i < j), ascending. beta must be Hermitian PSD.
RVector max_correlated_pt_eigs(const CMatrix& beta);

/// Bound tables for the named families and for an arbitrary state.
std::vector<BoundReport> isotropic_bounds(int d, double f);
std::vector<BoundReport> werner_bounds(int d, double p);
std::vector<BoundReport> max_correlated_bounds(const CorrelationMatrix& alpha);
std::vector<BoundReport> state_bounds(const DensityMatrix& rho);

}  // namespace pptd
