#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>

#include "pptd/code_lp.hpp"
#include "pptd/errors.hpp"

using namespace pptd;

TEST_CASE("transforms on a positive control") {
  // A' = 2^n (x + y)^n: A_C = B_C = (x + y)^n and S_C = 2^n y^n, all
  // coefficientwise nonnegative.
  for (int n = 1; n <= 6; ++n) {
    HomogeneousPoly a_prime = linear_form_power(1.0, 1.0, n);
    a_prime *= std::pow(2.0, n);
    const auto e = enumerator_transforms(a_prime, 2);
    CHECK(coeff_nonneg(e.S_poly));
    CHECK(coeff_nonneg(e.B_poly));
    CHECK(coeff_nonneg(e.A_poly));
    for (int k = 0; k <= n; ++k) {
      CHECK(e.A_poly[k] == doctest::Approx(binomial(n, k)));
      CHECK(e.B_poly[k] == doctest::Approx(binomial(n, k)));
    }
    CHECK(e.S_poly[n] == doctest::Approx(std::pow(2.0, n)));
    CHECK(e.admissible(1.0));
  }
}

TEST_CASE("transform matrices agree with polynomial substitution") {
  const HomogeneousPoly a(RVector::LinSpaced(5, 1.0, 5.0));
  for (int k : {2, 3}) {
    const auto e = enumerator_transforms(a, k);
    const auto b = poly_substitute(a, 0.0, 1.0, 1.0 / k, -1.0 / k);
    const auto aa = poly_substitute(a, 1.0 / k, -1.0 / k, 0.0, 1.0);
    CHECK((e.B_poly.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((e.A_poly.coeffs() - aa.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
    // Spot evaluation: S(x, y) = A'((x+y)/2, (y-x)/2).
    CHECK(e.S_poly.evaluate(0.3, 1.7) == doctest::Approx(a.evaluate(1.0, 0.7)));
  }
}

TEST_CASE("five-qubit code parameters are feasible") {
  const auto o = code_lp_feasible({5, 2.0, 3});
  CHECK(o.verdict == CodeVerdict::Feasible);
  CHECK(o.verified);
  REQUIRE(o.enumerators.has_value());
  CHECK(o.enumerators->admissible(2.0));
  // Known A_C of the five-qubit code: 1 + 15 x y^4 in these coordinates.
  CHECK(o.enumerators->A_poly[0] == doctest::Approx(1.0));
  CHECK(o.enumerators->A_poly[4] == doctest::Approx(15.0));
}

TEST_CASE("((5,2,4)) is excluded with a verified certificate") {
  const auto o = code_lp_feasible({5, 2.0, 4});
  CHECK(o.verdict == CodeVerdict::Infeasible);
  CHECK(o.verified);
  CHECK(verify_farkas(code_lp_problem({5, 2.0, 4}), o.certificate));
  CHECK_FALSE(o.enumerators.has_value());
}

TEST_CASE("((4,1,3)) verdict is self-consistent") {
  const auto o = code_lp_feasible({4, 1.0, 3});
  CHECK(o.verified);
  const auto lp = code_lp_problem({4, 1.0, 3});
  if (o.verdict == CodeVerdict::Feasible) {
    CHECK(verify_code_point(lp, o.point));
  } else {
    CHECK(verify_farkas(lp, o.certificate));
  }
}

TEST_CASE("verifiers reject wrong objects") {
  const auto lp = code_lp_problem({5, 2.0, 3});
  CHECK_FALSE(verify_code_point(lp, RVector::Zero(6)));  // violates [x^n] A = 1
  CHECK_FALSE(verify_farkas(lp, RVector::Zero(lp.G.rows() + lp.E.rows())));
  CHECK_FALSE(verify_code_point(lp, RVector::Zero(3)));
}

TEST_CASE("non-integer dimension is allowed") {
  const auto o = code_lp_feasible({5, 1.5, 3});
  CHECK(o.verified);
}

TEST_CASE("table: one verified object per cell, distance monotone") {
  const auto table = code_lp_table(6, 2);
  std::map<std::tuple<int, double, int>, CodeVerdict> verdict;
  for (const auto& o : table) {
    CHECK(o.verified);
    const bool has_point = o.point.size() > 0;
    const bool has_cert = o.certificate.size() > 0;
    CHECK(has_point != has_cert);
    if (o.params.d_min == 1) CHECK(o.verdict == CodeVerdict::Feasible);
    verdict[{o.params.n, o.params.K_dim, o.params.d_min}] = o.verdict;
  }
  for (const auto& [key, v] : verdict) {
    const auto [n, K, d] = key;
    if (v == CodeVerdict::Feasible && d > 1) {
      CHECK(verdict.at({n, K, d - 1}) == CodeVerdict::Feasible);
    }
  }
  // Ordering: n, then K, then d.
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& a = table[i - 1].params;
    const auto& b = table[i].params;
    CHECK(std::tie(a.n, a.K_dim, a.d_min) < std::tie(b.n, b.K_dim, b.d_min));
  }
  // n = 2 has K in {1, 2, 4} and d in {1, 2}.
  CHECK(verdict.count({2, 1.0, 2}) == 1);
  CHECK(verdict.count({2, 4.0, 2}) == 1);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(code_lp_feasible({0, 1.0, 1}), InvalidArgument);
  CHECK_THROWS_AS(code_lp_feasible({3, 0.5, 1}), InvalidArgument);
  CHECK_THROWS_AS(code_lp_feasible({3, 2.0, 4}), InvalidArgument);
  CHECK_THROWS_AS(code_lp_feasible({3, 2.0, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(code_lp_table(13, 2), InvalidArgument);
  CHECK_THROWS_AS(code_lp_table(0, 2), InvalidArgument);
}
