#include "pptd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pptd/entropy.hpp"
#include "pptd/errors.hpp"
#include "pptd/states.hpp"
#include "pptd/symmetry_lp.hpp"

namespace pptd {

namespace {

constexpr double kPropertyTol = 1e-8;
constexpr double kPartitionTol = 1e-9;

double log_negativity(const HermitianOperator& rho) {
  return std::log2(trace_norm(partial_transpose(rho)));
}

double largest_abs_eig(const HermitianOperator& a) { return operator_norm(a); }

}  // namespace

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::Upper ? "upper" : "lower";
}

bool bounds_consistent(const std::vector<BoundReport>& reports, double tol) {
  double best_lower = -std::numeric_limits<double>::infinity();
  double best_upper = std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    if (r.kind == BoundKind::Lower) {
      best_lower = std::max(best_lower, r.value);
    } else {
      best_upper = std::min(best_upper, r.value);
    }
  }
  return best_lower <= best_upper + tol;
}

double rains_bound(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.shape() == sigma.shape())) throw InvalidArgument("rains_bound: shapes differ");
  const double rel = relative_entropy(rho, sigma);
  if (std::isinf(rel)) return rel;
  return rel + log_negativity(sigma);
}

RainsPropertyReport rains_bound_properties_check(const DensityMatrix& rho,
                                                 const DensityMatrix& sigma,
                                                 const DensityMatrix& rho2, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("rains_bound_properties_check: p outside [0, 1]");
  if (!(rho.shape() == sigma.shape()) || !(rho2.shape() == sigma.shape())) {
    throw InvalidArgument("rains_bound_properties_check: shapes differ");
  }
  const int d = rho.shape().dim_a();
  if (rho.shape().dim_b() != d) {
    throw InvalidArgument("rains_bound_properties_check: twirl needs C^d (x) C^d");
  }
  RainsPropertyReport out{};
  out.base = rains_bound(rho, sigma);
  out.twirled = rains_bound(DensityMatrix(twirl(rho, d)), DensityMatrix(twirl(sigma, d)));
  const double b2 = rains_bound(rho2, sigma);
  DensityMatrix mix(p * static_cast<const HermitianOperator&>(rho) +
                    (1.0 - p) * static_cast<const HermitianOperator&>(rho2));
  out.mixture = rains_bound(mix, sigma);
  out.mixture_average = p * out.base + (1.0 - p) * b2;
  out.product = rains_bound(tensor(rho, rho2), tensor(sigma, sigma));
  out.product_sum = out.base + b2;
  out.twirl_monotone = out.twirled <= out.base + kPropertyTol;
  out.convex = out.mixture <= out.mixture_average + kPropertyTol;
  out.additive = std::abs(out.product - out.product_sum) <=
                 kPropertyTol * std::max(1.0, std::abs(out.product_sum));
  return out;
}

PartitionOfIdentity::PartitionOfIdentity(std::vector<HermitianOperator> projectors)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw InvalidArgument("PartitionOfIdentity: no projectors");
  const TensorShape& shape = projectors_.front().shape();
  const int n = shape.total_dim();
  CMatrix total = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const CMatrix& p = projectors_[i].matrix();
    if (!(projectors_[i].shape() == shape)) throw InvalidArgument("PartitionOfIdentity: shapes differ");
    if ((p * p - p).cwiseAbs().maxCoeff() > kPartitionTol) {
      throw InvalidArgument("PartitionOfIdentity: element " + std::to_string(i) +
                            " is not idempotent");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((p * projectors_[j].matrix()).cwiseAbs().maxCoeff() > kPartitionTol) {
        throw InvalidArgument("PartitionOfIdentity: elements " + std::to_string(j) + " and " +
                              std::to_string(i) + " are not orthogonal");
      }
    }
    total += p;
  }
  if ((total - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kPartitionTol) {
    throw InvalidArgument("PartitionOfIdentity: projectors do not sum to the identity");
  }
}

double partition_lower_bound(const DensityMatrix& rho, const PartitionOfIdentity& partition,
                             std::vector<PartitionTerm>* terms) {
  const auto& ps = partition.projectors();
  if (!(ps.front().shape() == rho.shape())) {
    throw InvalidArgument("partition_lower_bound: partition and state shapes differ");
  }
  double acc = 0.0;
  if (terms) terms->clear();
  for (const auto& p : ps) {
    const double r = trace_product(p, rho);
    const double s = largest_abs_eig(partial_transpose(p));
    if (terms) terms->push_back({r, s});
    if (r < 1e-12) continue;
    acc += r * (std::log2(r) - std::log2(s));
  }
  return acc;
}

double HashingCertificate::binomial_fidelity(double f) const {
  double acc = 0.0;
  for (int i = 0; i <= w; ++i) acc += binomial(n, i) * std::pow(f, n - i) * std::pow(1.0 - f, i);
  return acc;
}

HashingCertificate hashing_projector(int d, int n, int w) {
  if (d < 2) throw InvalidArgument("hashing_projector: d must be at least 2");
  if (n < 1) throw InvalidArgument("hashing_projector: n must be at least 1");
  if (w < 0 || w > n) throw InvalidArgument("hashing_projector: need 0 <= w <= n");
  if (std::pow(static_cast<double>(d), 2.0 * n) > 4096.0) {
    throw InvalidArgument("hashing_projector: dimension d^(2n) exceeds 4096");
  }
  HermitianOperator F = isotropic_block_projector(d, n, 0);
  for (int k = 1; k <= w; ++k) F += isotropic_block_projector(d, n, k);
  double bound = 0.0;
  for (int i = 0; i <= w; ++i) bound += binomial(n, i) * std::pow(d + 1.0, i);
  bound /= std::pow(static_cast<double>(d), n);
  const RVector ev = partial_transpose(F).eigenvalues();
  return HashingCertificate{d, n, w, std::move(F), bound, ev.cwiseAbs().sum(),
                            ev.cwiseAbs().maxCoeff()};
}

double hashing_rate(int d, double f) {
  if (d < 2) throw InvalidArgument("hashing_rate: d must be at least 2");
  if (!(f >= 0.5 && f <= 1.0)) throw InvalidArgument("hashing_rate: f must lie in [1/2, 1]");
  double v = std::log2(static_cast<double>(d)) + f * std::log2(f);
  if (f < 1.0) v += (1.0 - f) * std::log2((1.0 - f) / (d + 1.0));
  return std::max(v, 0.0);
}

double max_correlated_rate(const CorrelationMatrix& alpha) {
  const RVector diag = alpha.matrix().diagonal().real();
  const double h = shannon_entropy(std::span<const double>(diag.data(), diag.size()));
  const HermitianOperator a(TensorShape(alpha.size()), alpha.matrix());
  return h - von_neumann_entropy(a);
}

RVector max_correlated_pt_eigs(const CMatrix& beta) {
  const int k = static_cast<int>(beta.rows());
  if (k < 1 || beta.cols() != k) throw InvalidArgument("max_correlated_pt_eigs: beta must be square");
  const HermitianOperator b(TensorShape(k), beta);
  const double scale = std::max(1.0, b.matrix().cwiseAbs().maxCoeff());
  if (b.eigenvalues()(0) < -kEigenTolerance * scale) {
    throw InvalidArgument("max_correlated_pt_eigs: beta must be positive semidefinite");
  }
  RVector out(k * k);
  int pos = 0;
  for (int i = 0; i < k; ++i) out(pos++) = b.matrix()(i, i).real();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double m = std::abs(b.matrix()(i, j));
      out(pos++) = m;
      out(pos++) = -m;
    }
  }
  std::sort(out.data(), out.data() + out.size());
  return out;
}

std::vector<BoundReport> isotropic_bounds(int d, double f) {
  const DensityMatrix rho = isotropic_state(d, f);
  std::vector<BoundReport> out;
  out.push_back({"log-negativity", log_negativity(rho), BoundKind::Upper,
                 "relative-entropy bound with sigma = rho: log2 Tr|rho^Gamma|", std::nullopt,
                 std::nullopt});
  const DensityMatrix sep = isotropic_state(d, 1.0 / d);
  out.push_back({"relative-entropy-ppt", rains_bound(rho, sep), BoundKind::Upper,
                 "relative-entropy bound with the p.p.t. isotropic state I_d(1/d)",
                 static_cast<const HermitianOperator&>(sep), std::nullopt});
  if (f >= 0.5) {
    out.push_back({"hashing", hashing_rate(d, f), BoundKind::Lower,
                   "generalized hashing bound for isotropic states", std::nullopt, std::nullopt});
  }
  const DensityMatrix phi = max_entangled(d);
  PartitionOfIdentity part({phi, HermitianOperator::identity(phi.shape()) - phi});
  out.push_back({"partition", partition_lower_bound(rho, part), BoundKind::Lower,
                 "partition-of-identity bound with {Phi(d), 1 - Phi(d)}", std::nullopt,
                 std::nullopt});
  return out;
}

std::vector<BoundReport> werner_bounds(int d, double p) {
  const DensityMatrix rho = werner_state(d, p);
  std::vector<BoundReport> out;
  out.push_back({"log-negativity", log_negativity(rho), BoundKind::Upper,
                 "relative-entropy bound with sigma = rho: log2 Tr|rho^Gamma|", std::nullopt,
                 std::nullopt});
  if (d > 2) {
    const double pp = werner_rains_optimal_sigma(d, p);
    out.push_back({"werner-relative-entropy", werner_rains_bound(d, p), BoundKind::Upper,
                   "minimum over Werner sigma of the relative-entropy bound",
                   static_cast<const HermitianOperator&>(werner_state(d, pp)), std::nullopt});
    if (p == 1.0) {
      out.push_back({"antisymmetric-werner-exact", std::log2((d + 2.0) / d), BoundKind::Lower,
                     "exact p.p.t. distillable entanglement of W_d(1)", std::nullopt,
                     std::nullopt});
    }
  }
  const HermitianOperator id = HermitianOperator::identity(rho.shape());
  const HermitianOperator swap = swap_operator(d);
  PartitionOfIdentity part({0.5 * (id + swap), 0.5 * (id - swap)});
  out.push_back({"partition", partition_lower_bound(rho, part), BoundKind::Lower,
                 "partition-of-identity bound with the symmetric/antisymmetric projectors",
                 std::nullopt, std::nullopt});
  return out;
}

std::vector<BoundReport> max_correlated_bounds(const CorrelationMatrix& alpha) {
  const DensityMatrix rho = max_correlated_state(alpha);
  std::vector<BoundReport> out;
  out.push_back({"log-negativity", log_negativity(rho), BoundKind::Upper,
                 "relative-entropy bound with sigma = rho: log2 Tr|rho^Gamma|", std::nullopt,
                 std::nullopt});
  out.push_back({"max-correlated-rate", max_correlated_rate(alpha), BoundKind::Lower,
                 "maximally correlated states: H(diag alpha) - S(alpha), attained", std::nullopt,
                 std::nullopt});
  return out;
}

std::vector<BoundReport> state_bounds(const DensityMatrix& rho) {
  std::vector<BoundReport> out;
  out.push_back({"log-negativity", log_negativity(rho), BoundKind::Upper,
                 "relative-entropy bound with sigma = rho: log2 Tr|rho^Gamma|", std::nullopt,
                 std::nullopt});
  const auto& shape = rho.shape();
  if (shape.subsystem_count() == 2 && shape == TensorShape::bipartite(shape.dims()[0], shape.dims()[0])) {
    const DensityMatrix phi = max_entangled(shape.dim_a());
    PartitionOfIdentity part({phi, HermitianOperator::identity(phi.shape()) - phi});
    out.push_back({"partition", partition_lower_bound(rho, part), BoundKind::Lower,
                   "partition-of-identity bound with {Phi(d), 1 - Phi(d)}", std::nullopt,
                   std::nullopt});
  }
  return out;
}

}  // namespace pptd
