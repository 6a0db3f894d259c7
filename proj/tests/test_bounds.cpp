#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pptd/bounds.hpp"
#include "pptd/errors.hpp"
#include "pptd/random.hpp"
#include "pptd/states.hpp"

using namespace pptd;

namespace {

// rho_beta built densely: sum_ij beta_ij |ii><jj|.
HermitianOperator dense_max_correlated(const CMatrix& beta) {
  const int k = static_cast<int>(beta.rows());
  CMatrix m = CMatrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i * k + i, j * k + j) = beta(i, j);
  return HermitianOperator(TensorShape::bipartite(k, k), m);
}

CorrelationMatrix random_alpha(int k, Rng& rng) {
  return CorrelationMatrix(random_density_matrix(TensorShape(k), rng).matrix());
}

const BoundReport* find(const std::vector<BoundReport>& rs, const std::string& name) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](const BoundReport& r) { return r.name == name; });
  return it == rs.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("relative-entropy bound with sigma = rho is the log-negativity") {
  Rng rng(41);
  const auto rho = random_density_matrix(TensorShape::bipartite(2, 2), rng);
  CHECK(rains_bound(rho, rho) == doctest::Approx(std::log2(trace_norm(partial_transpose(rho)))).epsilon(1e-10));
}

TEST_CASE("relative-entropy bound properties on random states") {
  Rng rng(42);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto shape = TensorShape::bipartite(d, d);
      const auto rho = random_density_matrix(shape, rng);
      const auto sigma = random_density_matrix(shape, rng);
      const auto rho2 = random_density_matrix(shape, rng);
      if (d == 3 && trial > 1) break;  // the product check is 81 x 81
      const auto rep = rains_bound_properties_check(rho, sigma, rho2, 0.35);
      CHECK(rep.twirl_monotone);
      CHECK(rep.convex);
      CHECK(rep.additive);
    }
  }
}

TEST_CASE("relative-entropy bound is infinite off the support") {
  const auto phi = max_entangled(2);
  const auto mixed = isotropic_state(2, 0.25);
  CHECK(std::isinf(rains_bound(mixed, phi)));
}

TEST_CASE("partition bound for the isotropic split") {
  for (int d : {2, 3}) {
    const auto phi = max_entangled(d);
    PartitionOfIdentity part({phi, HermitianOperator::identity(phi.shape()) - phi});
    for (double f : {0.3, 0.6, 0.95}) {
      std::vector<PartitionTerm> terms;
      const double v = partition_lower_bound(isotropic_state(d, f), part, &terms);
      REQUIRE(terms.size() == 2);
      CHECK(terms[0].s == doctest::Approx(1.0 / d));
      CHECK(terms[1].s == doctest::Approx((d + 1.0) / d));
      const double expected = std::log2(static_cast<double>(d)) + f * std::log2(f) +
                              (1 - f) * std::log2((1 - f) / (d + 1.0));
      CHECK(v == doctest::Approx(expected).epsilon(1e-12));
      if (f >= 0.5) CHECK(hashing_rate(d, f) == doctest::Approx(std::max(expected, 0.0)));
    }
  }
}

TEST_CASE("partition validation") {
  const auto phi = max_entangled(2);
  CHECK_THROWS_AS(PartitionOfIdentity({phi}), InvalidArgument);
  CHECK_THROWS_AS(PartitionOfIdentity({phi, phi, HermitianOperator::identity(phi.shape()) - phi - phi}),
                  InvalidArgument);
  CHECK_THROWS_AS(PartitionOfIdentity(std::vector<HermitianOperator>{}), InvalidArgument);
}

TEST_CASE("hashing projector") {
  const auto cert = hashing_projector(2, 3, 1);
  const CMatrix& F = cert.F.matrix();
  CHECK((F * F - F).cwiseAbs().maxCoeff() < 1e-12);
  for (double f : {0.6, 0.9, 1.0}) {
    const double tr = trace_product(cert.F, tensor_power(isotropic_state(2, f), 3));
    CHECK(std::abs(tr - cert.binomial_fidelity(f)) < 1e-12);
  }
  CHECK(cert.negativity_bound == doctest::Approx((1.0 + 3.0 * 3.0) / 8.0));
  const RVector ev = partial_transpose(cert.F).eigenvalues();
  CHECK(cert.pt_trace_norm == doctest::Approx(ev.cwiseAbs().sum()));
  CHECK(cert.pt_operator_norm == doctest::Approx(ev.cwiseAbs().maxCoeff()));
  CHECK(cert.pt_operator_norm <= cert.negativity_bound + 1e-12);
  CHECK_THROWS_AS(hashing_projector(2, 3, 4), InvalidArgument);
  CHECK_THROWS_AS(hashing_projector(3, 4, 1), InvalidArgument);
}

TEST_CASE("hashing rate") {
  CHECK(hashing_rate(2, 1.0) == doctest::Approx(1.0));
  CHECK(hashing_rate(3, 1.0) == doctest::Approx(std::log2(3.0)));
  CHECK(hashing_rate(2, 0.5) == 0.0);
  CHECK_THROWS_AS(hashing_rate(2, 0.4), InvalidArgument);
}

TEST_CASE("maximally correlated partial-transpose spectrum") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 4;
    const CMatrix beta = 2.0 * random_density_matrix(TensorShape(k), rng).matrix();
    const RVector fast = max_correlated_pt_eigs(beta);
    const RVector dense = partial_transpose(dense_max_correlated(beta)).eigenvalues();
    REQUIRE(fast.size() == dense.size());
    CHECK((fast - dense).cwiseAbs().maxCoeff() < 1e-9);
  }
  CMatrix not_psd(2, 2);
  not_psd << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(max_correlated_pt_eigs(not_psd), InvalidArgument);
}

TEST_CASE("maximally correlated rate") {
  for (int k : {2, 3, 5}) {
    const CMatrix uniform = CMatrix::Constant(k, k, 1.0 / k);
    CHECK(max_correlated_rate(CorrelationMatrix(uniform)) == doctest::Approx(std::log2(k)).epsilon(1e-12));
    CMatrix diag = CMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) diag(i, i) = (i + 1.0) / (k * (k + 1) / 2.0);
    CHECK(std::abs(max_correlated_rate(CorrelationMatrix(diag))) < 1e-12);
  }
  // The rate never exceeds the log-negativity.
  Rng rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const auto alpha = random_alpha(3, rng);
    CHECK(bounds_consistent(max_correlated_bounds(alpha)));
  }
}

TEST_CASE("isotropic bound table") {
  for (int d : {2, 3}) {
    for (double f : {0.2, 0.5, 0.7, 0.9, 1.0}) {
      const auto rs = isotropic_bounds(d, f);
      CHECK(bounds_consistent(rs));
      CHECK(find(rs, "log-negativity") != nullptr);
      CHECK((find(rs, "hashing") != nullptr) == (f >= 0.5));
      // The upper bound from I_d(1/d) sits above the partition lower bound.
      CHECK(find(rs, "relative-entropy-ppt")->value >= find(rs, "partition")->value - 1e-9);
    }
  }
  // At f = 1 both the relative-entropy and hashing bounds equal log2 d.
  const auto rs = isotropic_bounds(3, 1.0);
  CHECK(find(rs, "relative-entropy-ppt")->value == doctest::Approx(std::log2(3.0)));
  CHECK(find(rs, "hashing")->value == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("Werner bound table") {
  for (int d : {2, 3, 4}) {
    for (double p : {0.1, 0.5, 0.8, 1.0}) {
      const auto rs = werner_bounds(d, p);
      CHECK(bounds_consistent(rs));
      CHECK((find(rs, "werner-relative-entropy") != nullptr) == (d > 2));
    }
  }
  const auto rs = werner_bounds(3, 1.0);
  const auto* exact = find(rs, "antisymmetric-werner-exact");
  REQUIRE(exact != nullptr);
  CHECK(exact->value == doctest::Approx(std::log2(5.0 / 3.0)));
  CHECK(find(rs, "werner-relative-entropy")->value == doctest::Approx(exact->value).epsilon(1e-12));
}

TEST_CASE("generic state table") {
  Rng rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rs = state_bounds(random_density_matrix(TensorShape::bipartite(3, 3), rng));
    CHECK(rs.size() == 2);
    CHECK(bounds_consistent(rs));
  }
  CHECK(state_bounds(random_density_matrix(TensorShape::bipartite(2, 3), rng)).size() == 1);
}
