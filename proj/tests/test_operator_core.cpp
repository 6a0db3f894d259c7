#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "pptd/entropy.hpp"
#include "pptd/errors.hpp"
#include "pptd/hermitian.hpp"
#include "pptd/random.hpp"
#include "pptd/state_io.hpp"
#include "pptd/states.hpp"

using namespace pptd;

namespace {

// (A^Gamma)_{(i k),(j l)} = A_{(i l),(j k)} written out with explicit loops.
CMatrix pt_by_loops(const CMatrix& a, int da, int db) {
  CMatrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) out(i * db + k, j * db + l) = a(i * db + l, j * db + k);
  return out;
}

CMatrix trace_b_by_loops(const CMatrix& a, int da, int db) {
  CMatrix out = CMatrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += a(i * db + k, j * db + k);
  return out;
}

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("partial transpose agrees with the index formula") {
  Rng rng(11);
  for (auto [da, db] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const auto shape = TensorShape::bipartite(da, db);
    const auto a = random_hermitian(shape, rng);
    CHECK(max_diff(partial_transpose(a).matrix(), pt_by_loops(a.matrix(), da, db)) < 1e-14);
    CHECK(max_diff(partial_transpose(partial_transpose(a)).matrix(), a.matrix()) < 1e-14);
  }
}

TEST_CASE("partial transpose on several subsystems") {
  Rng rng(12);
  TensorShape shape({2, 3, 2}, {1, 2});
  const auto a = random_hermitian(shape, rng);
  const std::vector<int> b_side{1, 2};
  // Transposing the grouped side (3 x 2 = 6) must match the bipartite formula.
  CHECK(max_diff(partial_transpose(a, b_side).matrix(), pt_by_loops(a.matrix(), 2, 6)) < 1e-14);
  const std::vector<int> both{0, 1, 2};
  CHECK(max_diff(partial_transpose(a, both).matrix(), a.matrix().transpose()) < 1e-14);
}

TEST_CASE("partial trace agrees with the index formula") {
  Rng rng(13);
  const auto rho = random_density_matrix(TensorShape::bipartite(3, 2), rng);
  const std::vector<int> b{1};
  const auto red = partial_trace(rho, b);
  CHECK(max_diff(red.matrix(), trace_b_by_loops(rho.matrix(), 3, 2)) < 1e-14);
  CHECK(std::abs(red.trace() - 1.0) < 1e-12);
  CHECK_FALSE(red.shape().is_bipartite());
}

TEST_CASE("Hermiticity is enforced") {
  CMatrix m(2, 2);
  m << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 0.0;
  CHECK_THROWS_AS(HermitianOperator(TensorShape(2), m), InvalidArgument);
  CMatrix bad(3, 3);
  bad.setIdentity();
  CHECK_THROWS_AS(HermitianOperator(TensorShape(2), bad), InvalidArgument);
}

TEST_CASE("density matrix validation") {
  CMatrix m = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(TensorShape(2), m), InvalidArgument);  // trace 2
  m << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(TensorShape(2), m), InvalidArgument);  // not PSD
}

TEST_CASE("positive and negative parts") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_hermitian(TensorShape::bipartite(2, 3), rng);
    const auto p = pos_part(a);
    const auto n = neg_part(a);
    CHECK(max_diff((p - n).matrix(), a.matrix()) < 1e-12);
    CHECK(std::abs(trace_product(p, n)) < 1e-12);
    CHECK(p.eigenvalues().minCoeff() > -1e-12);
    CHECK(n.eigenvalues().minCoeff() > -1e-12);
    const RVector ev = a.eigenvalues();
    CHECK(std::abs(trace_norm(a) - ev.cwiseAbs().sum()) < 1e-12);
    CHECK(std::abs(operator_norm(a) - ev.cwiseAbs().maxCoeff()) < 1e-12);
    CHECK(std::abs(abs_part(a).trace() - trace_norm(a)) < 1e-12);
  }
}

TEST_CASE("maximally entangled state and swap") {
  for (int d = 2; d <= 4; ++d) {
    const auto phi = max_entangled(d);
    CHECK(std::abs(phi.trace() - 1.0) < 1e-14);
    CHECK(max_diff((phi.matrix() * phi.matrix()), phi.matrix()) < 1e-14);
    // swap = d Phi^Gamma, Tr|Phi^Gamma| = d.
    CHECK(max_diff(swap_operator(d).matrix(), d * partial_transpose(phi).matrix()) < 1e-14);
    CHECK(std::abs(trace_norm(partial_transpose(phi)) - d) < 1e-12);
    CHECK(std::abs(maxent_fidelity(phi) - 1.0) < 1e-14);
  }
}

TEST_CASE("isotropic and Werner families") {
  for (int d = 2; d <= 3; ++d) {
    for (double f : {0.0, 0.2, 0.5, 1.0}) {
      const auto iso = isotropic_state(d, f);
      CHECK(std::abs(maxent_fidelity(iso) - f) < 1e-13);
      // Tr|I_d(f)^Gamma| = max(1, d f)... for f >= 1/d it is d f.
      const double expected = f >= 1.0 / d ? d * f : 1.0;
      CHECK(std::abs(trace_norm(partial_transpose(iso)) - expected) < 1e-12);
    }
    for (double p : {0.0, 0.3, 1.0}) {
      const auto w = werner_state(d, p);
      const auto swap = swap_operator(d);
      // Tr(W T) = (1 - p) - p.
      CHECK(std::abs(trace_product(w, swap) - (1.0 - 2.0 * p)) < 1e-13);
    }
  }
  CHECK_THROWS_AS(isotropic_state(2, 1.2), InvalidArgument);
  CHECK_THROWS_AS(werner_state(1, 0.5), InvalidArgument);
}

TEST_CASE("twirl keeps trace and overlap and lands on the isotropic line") {
  Rng rng(15);
  const auto rho = random_density_matrix(TensorShape::bipartite(3, 3), rng);
  const auto t = twirl(rho, 3);
  CHECK(std::abs(t.trace() - rho.trace()) < 1e-12);
  CHECK(std::abs(maxent_fidelity(t) - maxent_fidelity(rho)) < 1e-12);
  const auto iso = isotropic_state(3, maxent_fidelity(rho));
  CHECK(max_diff(t.matrix(), iso.matrix()) < 1e-12);
}

TEST_CASE("maximally correlated state") {
  CMatrix alpha(2, 2);
  alpha << 0.5, 0.5, 0.5, 0.5;
  const auto rho = max_correlated_state(CorrelationMatrix(alpha));
  CHECK(max_diff(rho.matrix(), max_entangled(2).matrix()) < 1e-14);
}

TEST_CASE("tensor products") {
  Rng rng(16);
  const auto a = random_density_matrix(TensorShape::bipartite(2, 2), rng);
  const auto b = random_density_matrix(TensorShape::bipartite(2, 3), rng);
  const auto ab = tensor(a, b);
  CHECK(ab.dim() == 24);
  CHECK(ab.shape().dim_a() == 4);
  CHECK(ab.shape().dim_b() == 6);
  // Tr|(A (x) B)^Gamma| is multiplicative.
  CHECK(std::abs(trace_norm(partial_transpose(ab)) -
                 trace_norm(partial_transpose(a)) * trace_norm(partial_transpose(b))) < 1e-10);
  const auto sq = tensor_power(a, 2);
  CHECK(max_diff(sq.matrix(), tensor(a, a).matrix()) < 1e-15);
}

TEST_CASE("entropies against classical oracles") {
  const std::vector<double> probs{0.5, 0.25, 0.25, 0.0};
  CHECK(std::abs(shannon_entropy(probs) - 1.5) < 1e-14);
  CMatrix diag = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) diag(i, i) = probs[i];
  const DensityMatrix rho(TensorShape::bipartite(2, 2), diag);
  CHECK(std::abs(von_neumann_entropy(rho) - 1.5) < 1e-12);

  // Commuting pair: relative entropy is the Kullback-Leibler divergence.
  const std::vector<double> q{0.25, 0.25, 0.25, 0.25};
  double kl = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (probs[i] > 0) kl += probs[i] * std::log2(probs[i] / q[i]);
  }
  const DensityMatrix mixed(TensorShape::bipartite(2, 2), 0.25 * CMatrix::Identity(4, 4));
  CHECK(std::abs(relative_entropy(rho, mixed) - kl) < 1e-12);
  CHECK(std::isinf(relative_entropy(mixed, rho)));

  // Unitary invariance of S(rho || sigma).
  Rng rng(17);
  const auto r1 = random_density_matrix(TensorShape::bipartite(2, 2), rng);
  const auto r2 = random_density_matrix(TensorShape::bipartite(2, 2), rng);
  const CMatrix u = haar_unitary(4, rng);
  const DensityMatrix r1u(r1.shape(), u * r1.matrix() * u.adjoint());
  const DensityMatrix r2u(r2.shape(), u * r2.matrix() * u.adjoint());
  CHECK(std::abs(relative_entropy(r1, r2) - relative_entropy(r1u, r2u)) < 1e-9);
  CHECK(relative_entropy(r1, r2) >= 0.0);
}

TEST_CASE("Haar unitary is unitary") {
  Rng rng(18);
  const CMatrix u = haar_unitary(5, rng);
  CHECK((u.adjoint() * u - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("state JSON round trip") {
  Rng rng(19);
  const auto rho = random_density_matrix(TensorShape::bipartite(2, 3), rng);
  const auto back = parse_state(write_state(rho));
  CHECK(back.shape() == rho.shape());
  CHECK(max_diff(back.matrix(), rho.matrix()) == doctest::Approx(0.0).epsilon(1e-15));

  TensorShape multi({2, 2, 2}, {2});
  const auto rho3 = random_density_matrix(multi, rng);
  const auto back3 = parse_state(write_state(rho3));
  CHECK(back3.shape() == multi);
}

TEST_CASE("malformed state JSON reports line and column") {
  const std::string text = "{\n  \"dims\": [2, 2],\n  \"re\": [[1, 0], oops]\n}";
  try {
    (void)parse_state(text);
    FAIL("expected an exception");
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_state("{\"dims\": [2, 2], \"re\": [[1]]}"), InvalidArgument);
  CHECK_THROWS_AS(parse_state("{\"re\": [[1]]}"), InvalidArgument);
}
