#pragma once

#include <random>

#include "pptd/hermitian.hpp"

namespace pptd {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a complex Ginibre matrix with the phases
/// of R's diagonal absorbed into Q).
CMatrix haar_unitary(int dim, Rng& rng);

/// Random state G G^dagger / Tr(G G^dagger) with G a dim x rank Ginibre matrix.
/// rank <= 0 means full rank.
DensityMatrix random_density_matrix(const TensorShape& shape, Rng& rng, int rank = 0);

/// Random real state (real Ginibre factor).
DensityMatrix random_real_density_matrix(const TensorShape& shape, Rng& rng);

/// Hermitian operator with i.i.d. Gaussian entries.
HermitianOperator random_hermitian(const TensorShape& shape, Rng& rng);

}  // namespace pptd
