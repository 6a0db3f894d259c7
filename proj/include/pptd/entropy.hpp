#pragma once

#include <span>

#include "pptd/hermitian.hpp"

namespace pptd {

/// Shannon entropy in bits with 0 log 0 = 0. Entries below 1e-10 count as zero.
double shannon_entropy(std::span<const double> probabilities);

/// von Neumann entropy -Tr(rho log2 rho) in bits.
double von_neumann_entropy(const HermitianOperator& rho);

/// S(rho || sigma) = Tr(rho (log2 rho - log2 sigma)) in bits.
///
/// Returns +infinity when rho has weight outside the support of sigma, the
/// support being the span of eigenvectors of sigma with eigenvalue > 1e-10.
double relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma);

}  // namespace pptd
