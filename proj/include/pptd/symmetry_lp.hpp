#pragma once

#include <utility>

#include "pptd/hermitian.hpp"
#include "pptd/poly.hpp"
#include "pptd/solver/lp.hpp"

namespace pptd {

/// Coefficient map B -> B(((d+1)x - (d-1)y)/2, (x+y)/2): takes the
/// isotropic-block polynomial of an operator to the Werner-block polynomial
/// of its partial transpose.
RMatrix iso_to_werner_substitution(int d, int n);
/// Its inverse, B -> B((x + (d-1)y)/d, (-x + (d+1)y)/d).
RMatrix werner_to_iso_substitution(int d, int n);

struct PowerLpResult {
  double value;
  HomogeneousPoly B;
  HomogeneousPoly S;
  solver::SolveReport report;
};

/// F_Gamma(I_d(f)^n; K) as the linear program over B = sum B_k x^(n-k) y^k:
///   0 <= B <= (x + (d^2-1)y)^n,
///   |S| <= (1/K) ((d^2+d)/2 x + (d^2-d)/2 y)^n,  S = B o iso_to_werner,
/// objective B(f, (1-f)/(d^2-1)). Variables are B_k / (x + (d^2-1)y)^n_k.
PowerLpResult isotropic_power_lp(int d, double f, int n, double K,
                                 double tol = solver::kDefaultTolerance);

/// F_Gamma(W_d(p)^n; K) as the linear program over S (isotropic blocks of F^Gamma):
///   |S| <= (1/K) (x + (d^2-1)y)^n,
///   0 <= B <= ((d^2+d)/2 x + (d^2-d)/2 y)^n,  B = S o iso_to_werner,
/// objective B(2(1-p)/(d^2+d), 2p/(d^2-d)). B is eliminated.
PowerLpResult werner_power_lp(int d, double p, int n, double K,
                              double tol = solver::kDefaultTolerance);

struct LpPointCheck {
  bool feasible;
  double objective;
  double max_violation;  ///< largest constraint violation, in coefficient units
};

/// Checks a candidate (B, S) against the Werner-power program constraints and
/// evaluates its objective.
LpPointCheck check_werner_lp_point(int d, double p, double K, const HomogeneousPoly& B,
                                   const HomogeneousPoly& S);

/// The degree-1 pair reaching value 1 at p = 1, K = (d+2)/d:
/// B = (d^2+d)/2 (d-2)/(d+2) x + (d^2-d)/2 y,  S = d/(d+2) (-x + (d^2-1) y).
std::pair<HomogeneousPoly, HomogeneousPoly> antisymmetric_werner_certificate(int d);

/// B(W_d(p), W_d(p')) = S(W_d(p) || W_d(p')) + log2 Tr|W_d(p')^Gamma| in closed form.
double werner_rains_objective(int d, double p, double p_prime);
/// Minimizer p' of werner_rains_objective (d > 2).
double werner_rains_optimal_sigma(int d, double p);
/// min over p' of the above: 0, 1 - H(p), or log2((d-2)/d) + p log2((d+2)/(d-2))
/// on [0, 1/2], [1/2, 1/2 + 1/d], [1/2 + 1/d, 1]. Requires d > 2.
double werner_rains_bound(int d, double p);

struct IsotropicBlocks {
  int d;
  int n;
  RVector F;  ///< value of the operator on block k (k factors in 1 - Phi(d))
  [[nodiscard]] HomogeneousPoly polynomial() const;  ///< B_k = C(n,k) (d^2-1)^k F_k
};

/// Block values of an operator on (C^d (x) C^d)^n invariant under permutations
/// of the n pairs and under U (x) conj(U) on each pair. The operator must be
/// reproduced by its block values to 1e-8, otherwise InvalidArgument.
IsotropicBlocks invariant_block_decompose_isotropic(const HermitianOperator& a);

/// sum over k-subsets of the n pairs of the products with 1 - Phi(d) on the
/// subset and Phi(d) elsewhere (the block projector for k).
HermitianOperator isotropic_block_projector(int d, int n, int k);

}  // namespace pptd
