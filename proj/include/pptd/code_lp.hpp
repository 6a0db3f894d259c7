#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pptd/poly.hpp"
#include "pptd/solver/lp.hpp"

namespace pptd {

/// ((n, K, d)) over an alphabet of size k.
struct CodeParams {
  int n;
  double K_dim;
  int d_min;
  int k_alphabet = 2;

  void validate() const;
};

/// A'_C and the three enumerators derived from it.
struct EnumeratorSet {
  HomogeneousPoly A_prime;
  HomogeneousPoly S_poly;
  HomogeneousPoly B_poly;
  HomogeneousPoly A_poly;

  /// S, B, A and B - A/K_dim all coefficientwise >= -1e-9.
  [[nodiscard]] bool admissible(double K_dim, double tol = kCoeffTolerance) const;
};

/// Coefficient maps applied to A'_C:
///   S_C(x,y) = A'((x+y)/2, (y-x)/2),
///   B_C(x,y) = A'(y, (x-y)/k),
///   A_C(x,y) = A'((x-y)/k, y).
RMatrix shadow_transform(int n, int k);
RMatrix b_transform(int n, int k);
RMatrix a_transform(int n, int k);

EnumeratorSet enumerator_transforms(const HomogeneousPoly& A_prime, int k_alphabet);

/// Feasibility program over the n+1 coefficients of A'_C:
///   S_C, B_C, A_C >= 0,  B_C - A_C/K >= 0,
///   [x^n] A_C = 1,  [x^(n-j) y^j] (A_C - K B_C) = 0 for 0 <= j < d_min.
/// Zero objective; rows are returned unscaled.
solver::LpProblem code_lp_problem(const CodeParams& params);

enum class CodeVerdict { Feasible, Infeasible, Marginal };
std::string_view to_string(CodeVerdict v);

struct CodeLpOutcome {
  CodeParams params;
  CodeVerdict verdict;
  /// Phase-1 residual of the LP (0 for feasible programs).
  double residual;
  /// Feasible: coefficients of A'_C and the enumerators built from them.
  RVector point;
  std::optional<EnumeratorSet> enumerators;
  /// Infeasible / marginal: Farkas vector (u for the inequality rows, then v
  /// for the equality rows) of code_lp_problem(params).
  RVector certificate;
  /// The point or certificate passed the independent check against the raw
  /// constraint matrix (tolerance 1e-8).
  bool verified;
};

/// Runs the program. Phase-1 residual <= 1e-8: feasible. Residual in
/// (1e-8, 1e-6]: marginal. Larger: infeasible. Non-feasible verdicts carry
/// the Farkas certificate.
CodeLpOutcome code_lp_feasible(const CodeParams& params);

/// Checks a point against the raw constraints (max violation <= tol).
bool verify_code_point(const solver::LpProblem& lp, const RVector& x, double tol = 1e-8);
/// Checks u >= 0, G^T u + E^T v = 0 (to tol relative to the row scale) and
/// h^T u + e^T v < 0.
bool verify_farkas(const solver::LpProblem& lp, const RVector& certificate, double tol = 1e-8);

/// Sweep over 1 <= n <= n_max, K in {1, 2, 4, ...} up to k^n, 1 <= d_min <= n.
/// Cells ordered by n, then K, then d_min. n_max <= 12.
std::vector<CodeLpOutcome> code_lp_table(int n_max, int k_alphabet);

}  // namespace pptd
