#include "pptd/symmetry_lp.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <optional>

#include "pptd/errors.hpp"
#include "pptd/states.hpp"

namespace pptd {

namespace {

void check_common(int d, int n, double K) {
  if (d < 2) throw InvalidArgument("d must be at least 2");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(K > 0.0) || !std::isfinite(K)) throw InvalidArgument("K must be a positive real");
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  }
}

// Appends the rows lo <= coeffs . x <= hi, each divided by max(1, |bound|).
void add_box_rows(const RMatrix& a, const RVector& lo, const RVector& hi, std::vector<RVector>& g,
                  std::vector<double>& h) {
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const double su = std::max(1.0, std::abs(hi(r)));
    g.push_back(a.row(r).transpose() / su);
    h.push_back(hi(r) / su);
    const double sl = std::max(1.0, std::abs(lo(r)));
    g.push_back(-a.row(r).transpose() / sl);
    h.push_back(-lo(r) / sl);
  }
}

solver::LpProblem make_lp(const RVector& objective, const std::vector<RVector>& g,
                          const std::vector<double>& h) {
  solver::LpProblem lp;
  const Eigen::Index m = objective.size();
  lp.objective = objective;
  lp.G.resize(static_cast<Eigen::Index>(g.size()), m);
  lp.h.resize(static_cast<Eigen::Index>(h.size()));
  for (std::size_t r = 0; r < g.size(); ++r) {
    lp.G.row(static_cast<Eigen::Index>(r)) = g[r].transpose();
    lp.h(static_cast<Eigen::Index>(r)) = h[r];
  }
  lp.E.resize(0, m);
  lp.e.resize(0);
  return lp;
}

void require_optimal(const solver::SolveReport& rep, const char* what) {
  if (!rep.optimal()) {
    throw SolverError(std::string(what) + ": LP ended with status " +
                      std::string(solver::to_string(rep.status)) + " " + rep.message);
  }
}

double xlog2(double a, double b) {
  // a log2(a / b) with 0 log 0 = 0.
  if (a <= 0.0) return 0.0;
  if (b <= 0.0) return std::numeric_limits<double>::infinity();
  return a * std::log2(a / b);
}

}  // namespace

RMatrix iso_to_werner_substitution(int d, int n) {
  return substitution_matrix(n, (d + 1) / 2.0, -(d - 1) / 2.0, 0.5, 0.5);
}

RMatrix werner_to_iso_substitution(int d, int n) {
  return substitution_matrix(n, 1.0 / d, (d - 1.0) / d, -1.0 / d, (d + 1.0) / d);
}

PowerLpResult isotropic_power_lp(int d, double f, int n, double K, double tol) {
  check_common(d, n, K);
  check_unit(f, "f");
  const double dd = static_cast<double>(d) * d;
  const RVector P = linear_form_power(1.0, dd - 1.0, n).coeffs();
  const RVector Q = linear_form_power((dd + d) / 2.0, (dd - d) / 2.0, n).coeffs();
  const RMatrix T = iso_to_werner_substitution(d, n);

  // b_k = B_k / P_k in [0, 1]; S = T diag(P) b.
  RVector objective(n + 1);
  for (int k = 0; k <= n; ++k) {
    objective(k) = binomial(n, k) * std::pow(f, n - k) * std::pow(1.0 - f, k);
  }
  std::vector<RVector> g;
  std::vector<double> h;
  add_box_rows(RMatrix::Identity(n + 1, n + 1), RVector::Zero(n + 1), RVector::Ones(n + 1), g, h);
  const RMatrix TS = T * P.asDiagonal();
  add_box_rows(TS, -Q / K, Q / K, g, h);
  const auto lp = make_lp(objective, g, h);
  auto rep = solver::solve_lp(lp, tol);
  require_optimal(rep, "isotropic_power_lp");
  const RVector B = P.cwiseProduct(rep.x);
  return {rep.value, HomogeneousPoly(B), HomogeneousPoly(T * B), std::move(rep)};
}

PowerLpResult werner_power_lp(int d, double p, int n, double K, double tol) {
  check_common(d, n, K);
  check_unit(p, "p");
  const double dd = static_cast<double>(d) * d;
  const RVector P = linear_form_power(1.0, dd - 1.0, n).coeffs();
  const RVector Q = linear_form_power((dd + d) / 2.0, (dd - d) / 2.0, n).coeffs();
  const RMatrix T = iso_to_werner_substitution(d, n);

  // s_k = K S_k / P_k in [-1, 1]; B = T diag(P / K) s.
  const RMatrix TB = T * (P / K).asDiagonal();
  const double x0 = 2.0 * (1.0 - p) / (dd + d);
  const double y0 = 2.0 * p / (dd - d);
  RVector point(n + 1);
  for (int k = 0; k <= n; ++k) point(k) = std::pow(x0, n - k) * std::pow(y0, k);
  const RVector objective = TB.transpose() * point;

  std::vector<RVector> g;
  std::vector<double> h;
  add_box_rows(RMatrix::Identity(n + 1, n + 1), -RVector::Ones(n + 1), RVector::Ones(n + 1), g, h);
  add_box_rows(TB, RVector::Zero(n + 1), Q, g, h);
  const auto lp = make_lp(objective, g, h);
  auto rep = solver::solve_lp(lp, tol);
  require_optimal(rep, "werner_power_lp");
  const RVector S = (P / K).cwiseProduct(rep.x);
  return {rep.value, HomogeneousPoly(T * S), HomogeneousPoly(S), std::move(rep)};
}

LpPointCheck check_werner_lp_point(int d, double p, double K, const HomogeneousPoly& B,
                                   const HomogeneousPoly& S) {
  const int n = B.degree();
  check_common(d, n, K);
  check_unit(p, "p");
  if (S.degree() != n) throw InvalidArgument("check_werner_lp_point: degree mismatch");
  const double dd = static_cast<double>(d) * d;
  const RVector P = linear_form_power(1.0, dd - 1.0, n).coeffs();
  const RVector Q = linear_form_power((dd + d) / 2.0, (dd - d) / 2.0, n).coeffs();
  const RVector link = iso_to_werner_substitution(d, n) * S.coeffs() - B.coeffs();
  double viol = link.cwiseAbs().maxCoeff();
  viol = std::max(viol, -B.coeffs().minCoeff());
  viol = std::max(viol, (B.coeffs() - Q).maxCoeff());
  viol = std::max(viol, (S.coeffs().cwiseAbs() - P / K).maxCoeff());
  const double obj = B.evaluate(2.0 * (1.0 - p) / (dd + d), 2.0 * p / (dd - d));
  return {viol <= kCoeffTolerance, obj, std::max(viol, 0.0)};
}

std::pair<HomogeneousPoly, HomogeneousPoly> antisymmetric_werner_certificate(int d) {
  if (d < 2) throw InvalidArgument("antisymmetric_werner_certificate: d must be at least 2");
  const double dd = static_cast<double>(d) * d;
  RVector b(2);
  b << (dd + d) / 2.0 * (d - 2.0) / (d + 2.0), (dd - d) / 2.0;
  RVector s(2);
  s << -d / (d + 2.0), d / (d + 2.0) * (dd - 1.0);
  return {HomogeneousPoly(b), HomogeneousPoly(s)};
}

double werner_rains_objective(int d, double p, double p_prime) {
  if (d < 2) throw InvalidArgument("werner_rains_objective: d must be at least 2");
  check_unit(p, "p");
  check_unit(p_prime, "p'");
  // W_d(p) and W_d(p') commute; the relative entropy is the binary one.
  const double rel = xlog2(p, p_prime) + xlog2(1.0 - p, 1.0 - p_prime);
  const double neg = p_prime <= 0.5 ? 0.0 : std::log2(1.0 + 2.0 * (2.0 * p_prime - 1.0) / d);
  return rel + neg;
}

double werner_rains_optimal_sigma(int d, double p) {
  if (d <= 2) throw InvalidArgument("werner_rains_optimal_sigma: requires d > 2");
  check_unit(p, "p");
  if (p <= 0.5) return p;
  if (p <= 0.5 + 1.0 / d) return 0.5;
  return p * (d - 2.0) / (d + 2.0 - 4.0 * p);
}

double werner_rains_bound(int d, double p) {
  if (d <= 2) throw InvalidArgument("werner_rains_bound: the closed form requires d > 2");
  check_unit(p, "p");
  if (p <= 0.5) return 0.0;
  if (p <= 0.5 + 1.0 / d) {
    const double q = 1.0 - p;
    return 1.0 + p * std::log2(p) + (q > 0.0 ? q * std::log2(q) : 0.0);
  }
  return std::log2((d - 2.0) / d) + p * std::log2((d + 2.0) / (d - 2.0));
}

HomogeneousPoly IsotropicBlocks::polynomial() const {
  RVector c(n + 1);
  for (int k = 0; k <= n; ++k) c(k) = binomial(n, k) * std::pow(d * d - 1.0, k) * F(k);
  return HomogeneousPoly(std::move(c));
}

HermitianOperator isotropic_block_projector(int d, int n, int k) {
  if (d < 2 || n < 1 || k < 0 || k > n) throw InvalidArgument("isotropic_block_projector: bad arguments");
  if (std::pow(static_cast<double>(d), 2.0 * n) > 4096.0) {
    throw InvalidArgument("isotropic_block_projector: dimension d^(2n) exceeds 4096");
  }
  const HermitianOperator phi = max_entangled(d);
  const HermitianOperator rest = HermitianOperator::identity(phi.shape()) - phi;
  std::optional<HermitianOperator> acc;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    HermitianOperator term = (mask & 1u) ? rest : phi;
    for (int j = 1; j < n; ++j) term = tensor(term, (mask >> j) & 1u ? rest : phi);
    if (acc) {
      *acc += term;
    } else {
      acc = std::move(term);
    }
  }
  return *acc;
}

IsotropicBlocks invariant_block_decompose_isotropic(const HermitianOperator& a) {
  const auto& dims = a.shape().dims();
  if (dims.empty() || dims.size() % 2 != 0) {
    throw InvalidArgument("invariant_block_decompose_isotropic: expected n pairs of subsystems");
  }
  const int d = dims[0];
  const int n = static_cast<int>(dims.size()) / 2;
  for (int dim : dims) {
    if (dim != d) throw InvalidArgument("invariant_block_decompose_isotropic: unequal dimensions");
  }
  IsotropicBlocks out{d, n, RVector(n + 1)};
  CMatrix rebuilt = CMatrix::Zero(a.dim(), a.dim());
  for (int k = 0; k <= n; ++k) {
    const HermitianOperator proj = isotropic_block_projector(d, n, k);
    const double dk = binomial(n, k) * std::pow(d * d - 1.0, k);
    out.F(k) = (proj.matrix().array() * a.matrix().transpose().array()).sum().real() / dk;
    rebuilt += out.F(k) * proj.matrix();
  }
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  const double err = (rebuilt - a.matrix()).cwiseAbs().maxCoeff();
  if (err > 1e-8 * scale) {
    throw InvalidArgument("invariant_block_decompose_isotropic: operator is not invariant (residual " +
                          std::to_string(err) + ")");
  }
  return out;
}

}  // namespace pptd
