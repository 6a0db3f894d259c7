#pragma once

#include "pptd/hermitian.hpp"

namespace pptd {

/// Phi(K) = (1/K) sum_ij |ii><jj| on C^K (x) C^K.
DensityMatrix max_entangled(int dim);

/// The swap T(21) on C^d (x) C^d; equals d * Phi(d)^Gamma.
HermitianOperator swap_operator(int dim);

/// Tr(Phi(K) A) for A on C^K (x) C^K.
double maxent_fidelity(const HermitianOperator& a);

/// I_d(f) = f Phi(d) + (1 - f)/(d^2 - 1) (1 - Phi(d)).
DensityMatrix isotropic_state(int dim, double fidelity);

/// W_d(p) = (1 - p)/(d^2 + d) (1 + T) + p/(d^2 - d) (1 - T), T the swap.
/// p is the weight on the antisymmetric subspace.
DensityMatrix werner_state(int dim, double antisym_weight);

/// rho_alpha = sum_ij alpha_ij |ii><jj| on C^k (x) C^k.
DensityMatrix max_correlated_state(const CorrelationMatrix& alpha);

/// Isotropic twirl: projects A onto span{Phi(K), 1 - Phi(K)} keeping Tr(A)
/// and Tr(Phi(K) A). For K = 1 the input is returned unchanged.
HermitianOperator twirl(const HermitianOperator& a, int dim);

}  // namespace pptd
