#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pptd/hermitian.hpp"
#include "pptd/solver/sdp.hpp"

namespace pptd {

struct FidelityQuery {
  DensityMatrix rho;  ///< bipartite; Gamma acts on side B
  double K;           ///< target dimension, any positive real
};

struct FidelityResult {
  double value;                 ///< primal objective Tr(F rho)
  HermitianOperator primal_F;   ///< optimal F, negative eigenvalues clamped to 0
  HermitianOperator dual_D;     ///< D = (B - C)^Gamma from the block multipliers
  double dual_value;            ///< dual objective of the multipliers
  double gap;                   ///< |value - dual_value|
  int iterations;
};

/// The program  max Tr(F rho)  s.t.  0 <= F <= 1,  -1/K <= F^Gamma <= 1/K,
/// with F expanded in a real basis of Hermitian matrices (symmetric only when
/// rho is real). Blocks are ordered F, 1 - F, 1/K - F^Gamma, 1/K + F^Gamma.
solver::SdpProblem fidelity_program(const DensityMatrix& rho, double K);

/// F_Gamma(rho; K) by interior point. Throws SolverError when the solver does
/// not reach an optimal status.
FidelityResult fidelity_ppt(const DensityMatrix& rho, double K,
                            double tol = solver::kDefaultTolerance);
FidelityResult fidelity_ppt(const FidelityQuery& query, double tol = solver::kDefaultTolerance);

/// Tr(rho - D)_+ + (1/K) Tr|D^Gamma|, an upper bound on F_Gamma(rho; K) for any
/// Hermitian D.
double dual_bound(const DensityMatrix& rho, double K, const HermitianOperator& D);

/// F_Gamma(I_d(f); K): 1/K for f <= 1/d, 1/K + (fd - 1)/(d - 1) (1 - 1/K) for
/// K <= d, fd/K for K >= d. Values for K <= 1 are 1.
double fidelity_isotropic_closed(int d, double f, double K);
/// F_Gamma(W_d(1); K) = min(1, (d + 2)/(d K)).
double fidelity_werner1_closed(int d, double K);
/// F_Gamma(Phi(d); K) = min(1, d/K).
double fidelity_maxent_closed(int d, double K);

struct KMonotoneRow {
  double K;
  double fidelity;
  double k_times_f;
  std::optional<double> normalized;  ///< (K F - 1)/(K - 1), only for K > 1
};

struct KMonotoneTable {
  std::vector<KMonotoneRow> rows;
  bool k_times_f_nondecreasing;
  bool normalized_nonincreasing;
};

/// Evaluates F_Gamma on an ascending K grid and checks that K F is
/// nondecreasing and (K F - 1)/(K - 1) nonincreasing, both to 1e-6.
KMonotoneTable k_monotone_checks(const DensityMatrix& rho, std::span<const double> K_grid,
                                 double tol = solver::kDefaultTolerance);

struct TensorBounds {
  double lower;  ///< F(rho1; K') F(rho2; K/K')
  double upper;  ///< F(rho1; K / Tr|rho2^Gamma|)
};

/// Sandwich on F_Gamma(rho1 (x) rho2; K) computed from the factors.
TensorBounds tensor_bounds(const DensityMatrix& rho1, const DensityMatrix& rho2, double K,
                           double K_prime, double tol = solver::kDefaultTolerance);

}  // namespace pptd
