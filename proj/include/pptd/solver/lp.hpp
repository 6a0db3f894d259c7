#pragma once

#include "pptd/solver/report.hpp"

namespace pptd::solver {

/// maximize objective . x subject to G x <= h, E x = e, x free.
/// G or E may have zero rows (but must have objective.size() columns).
struct LpProblem {
  RVector objective;
  RMatrix G;
  RVector h;
  RMatrix E;
  RVector e;

  [[nodiscard]] int num_vars() const { return static_cast<int>(objective.size()); }
  /// Throws InvalidArgument on inconsistent sizes or non-finite data.
  void validate() const;
};

struct LpOptions {
  double tol = kDefaultTolerance;  ///< absolute duality gap
  /// Phase-1 residual (sum of artificial values on equilibrated rows) above
  /// which the program is declared infeasible.
  double feasibility_tol = 1e-9;
  int max_pivots = 100000;
};

/// Dense two-phase simplex. On optimal status `dual` holds multipliers
/// (lambda >= 0 for the G rows, then nu for the E rows) with
/// G^T lambda + E^T nu = objective. Infeasible and unbounded statuses carry
/// the certificates documented on SolveReport; `primal_infeasibility` is the
/// phase-1 residual in all cases.
SolveReport solve_lp(const LpProblem& problem, double tol = kDefaultTolerance);
SolveReport solve_lp(const LpProblem& problem, const LpOptions& options);

}  // namespace pptd::solver
