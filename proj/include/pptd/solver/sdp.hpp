#pragma once

#include <vector>

#include "pptd/solver/report.hpp"

namespace pptd::solver {

/// Upper-triangle entry (row <= col) of a sparse Hermitian matrix; the
/// mirrored entry (col, row) holds the conjugate. Diagonal values must be real.
struct HermitianEntry {
  int row;
  int col;
  Complex value;
};
using SparseHermitian = std::vector<HermitianEntry>;

/// Affine Hermitian map x -> constant + sum_i x_i coefficients[i], required to
/// be positive semidefinite at a solution.
struct SdpBlock {
  CMatrix constant;
  std::vector<SparseHermitian> coefficients;  // one entry per variable, may be empty

  [[nodiscard]] int dim() const { return static_cast<int>(constant.rows()); }
};

/// maximize objective . x + objective_constant
/// subject to every block being PSD, x in R^num_vars.
struct SdpProblem {
  int num_vars = 0;
  RVector objective;
  double objective_constant = 0.0;
  std::vector<SdpBlock> blocks;

  /// Throws InvalidArgument on inconsistent sizes or non-Hermitian data.
  void validate() const;
  [[nodiscard]] CMatrix block_value(int block, const RVector& x) const;
};

struct SdpOptions {
  double tol = kDefaultTolerance;     ///< absolute duality gap
  double feasibility_tol = 1e-9;      ///< relative residual on both sides
  int max_iterations = 200;
};

/// Primal-dual interior-point method (HKM search direction, Mehrotra
/// predictor-corrector, infeasible start). Complex blocks are solved through
/// the real symmetric embedding [[Re, -Im], [Im, Re]]; multipliers are
/// reported as Hermitian matrices. Infeasibility is diagnosed with a phase-1
/// program when the main iteration fails to converge; see docs/solver.md.
SolveReport solve_sdp(const SdpProblem& problem, double tol = kDefaultTolerance);
SolveReport solve_sdp(const SdpProblem& problem, const SdpOptions& options);

}  // namespace pptd::solver
