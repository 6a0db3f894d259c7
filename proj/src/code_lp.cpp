#include "pptd/code_lp.hpp"

#include <cmath>

#include "pptd/errors.hpp"

namespace pptd {

namespace {

constexpr double kFeasibleResidual = 1e-8;
constexpr double kMarginalResidual = 1e-6;
constexpr int kMaxTableLength = 12;

}  // namespace

void CodeParams::validate() const {
  if (n < 1) throw InvalidArgument("code length n must be at least 1");
  if (!(K_dim >= 1.0) || !std::isfinite(K_dim)) throw InvalidArgument("code dimension K must be >= 1");
  if (d_min < 1 || d_min > n) throw InvalidArgument("minimum distance must satisfy 1 <= d <= n");
  if (k_alphabet < 2) throw InvalidArgument("alphabet size must be at least 2");
}

bool EnumeratorSet::admissible(double K_dim, double tol) const {
  return coeff_nonneg(S_poly, tol) && coeff_nonneg(B_poly, tol) && coeff_nonneg(A_poly, tol) &&
         coeff_nonneg(B_poly - (1.0 / K_dim) * A_poly, tol);
}

RMatrix shadow_transform(int n, int /*k*/) {
  return substitution_matrix(n, 0.5, 0.5, -0.5, 0.5);
}

RMatrix b_transform(int n, int k) {
  return substitution_matrix(n, 0.0, 1.0, 1.0 / k, -1.0 / k);
}

RMatrix a_transform(int n, int k) {
  return substitution_matrix(n, 1.0 / k, -1.0 / k, 0.0, 1.0);
}

EnumeratorSet enumerator_transforms(const HomogeneousPoly& A_prime, int k_alphabet) {
  if (A_prime.degree() < 1) throw InvalidArgument("enumerator_transforms: degree must be >= 1");
  if (k_alphabet < 2) throw InvalidArgument("enumerator_transforms: alphabet size must be >= 2");
  const int n = A_prime.degree();
  const RVector& a = A_prime.coeffs();
  return EnumeratorSet{A_prime, HomogeneousPoly(shadow_transform(n, k_alphabet) * a),
                       HomogeneousPoly(b_transform(n, k_alphabet) * a),
                       HomogeneousPoly(a_transform(n, k_alphabet) * a)};
}

std::string_view to_string(CodeVerdict v) {
  switch (v) {
    case CodeVerdict::Feasible:
      return "feasible";
    case CodeVerdict::Infeasible:
      return "infeasible";
    case CodeVerdict::Marginal:
      return "marginal";
  }
  return "unknown";
}

solver::LpProblem code_lp_problem(const CodeParams& params) {
  params.validate();
  const int n = params.n;
  const int m = n + 1;
  const RMatrix TS = shadow_transform(n, params.k_alphabet);
  const RMatrix TB = b_transform(n, params.k_alphabet);
  const RMatrix TA = a_transform(n, params.k_alphabet);
  const RMatrix TD = TB - TA / params.K_dim;

  solver::LpProblem lp;
  lp.objective = RVector::Zero(m);
  // -T a <= 0 for each of the four families.
  lp.G.resize(4 * m, m);
  lp.G << -TS, -TB, -TA, -TD;
  lp.h = RVector::Zero(4 * m);
  lp.E.resize(1 + params.d_min, m);
  lp.e = RVector::Zero(1 + params.d_min);
  lp.E.row(0) = TA.row(0);
  lp.e(0) = 1.0;
  for (int j = 0; j < params.d_min; ++j) lp.E.row(1 + j) = TA.row(j) - params.K_dim * TB.row(j);
  return lp;
}

bool verify_code_point(const solver::LpProblem& lp, const RVector& x, double tol) {
  if (x.size() != lp.num_vars()) return false;
  double viol = 0.0;
  if (lp.G.rows() > 0) viol = std::max(viol, (lp.G * x - lp.h).maxCoeff());
  if (lp.E.rows() > 0) viol = std::max(viol, (lp.E * x - lp.e).cwiseAbs().maxCoeff());
  return viol <= tol;
}

bool verify_farkas(const solver::LpProblem& lp, const RVector& certificate, double tol) {
  const Eigen::Index p = lp.G.rows();
  const Eigen::Index q = lp.E.rows();
  if (certificate.size() != p + q) return false;
  const RVector u = certificate.head(p);
  const RVector v = certificate.tail(q);
  if (p > 0 && u.minCoeff() < -tol) return false;
  RVector combo = RVector::Zero(lp.num_vars());
  double scale = 0.0;
  if (p > 0) {
    combo += lp.G.transpose() * u;
    scale = std::max(scale, (lp.G.rowwise().lpNorm<Eigen::Infinity>().cwiseProduct(u.cwiseAbs())).maxCoeff());
  }
  if (q > 0) {
    combo += lp.E.transpose() * v;
    scale = std::max(scale, (lp.E.rowwise().lpNorm<Eigen::Infinity>().cwiseProduct(v.cwiseAbs())).maxCoeff());
  }
  if (combo.cwiseAbs().maxCoeff() > tol * std::max(1.0, scale)) return false;
  double rhs = 0.0;
  if (p > 0) rhs += lp.h.dot(u);
  if (q > 0) rhs += lp.e.dot(v);
  return rhs < -tol;
}

CodeLpOutcome code_lp_feasible(const CodeParams& params) {
  const solver::LpProblem lp = code_lp_problem(params);
  solver::LpOptions opt;
  opt.feasibility_tol = kFeasibleResidual;
  const solver::SolveReport rep = solver::solve_lp(lp, opt);

  CodeLpOutcome out{params, CodeVerdict::Infeasible, rep.primal_infeasibility, {}, std::nullopt,
                    {}, false};
  if (rep.status == solver::Status::Optimal) {
    out.verdict = CodeVerdict::Feasible;
    out.residual = 0.0;
    out.point = rep.x;
    out.enumerators = enumerator_transforms(HomogeneousPoly(rep.x), params.k_alphabet);
    out.verified = verify_code_point(lp, rep.x);
    return out;
  }
  if (rep.status != solver::Status::Infeasible) {
    throw SolverError("code LP for ((" + std::to_string(params.n) + ", " +
                      std::to_string(params.K_dim) + ", " + std::to_string(params.d_min) +
                      ")) ended with status " + std::string(solver::to_string(rep.status)) +
                      ": " + rep.message);
  }
  out.verdict = rep.primal_infeasibility <= kMarginalResidual ? CodeVerdict::Marginal
                                                              : CodeVerdict::Infeasible;
  out.certificate = rep.certificate;
  out.verified = verify_farkas(lp, rep.certificate);
  return out;
}

std::vector<CodeLpOutcome> code_lp_table(int n_max, int k_alphabet) {
  if (n_max < 1 || n_max > kMaxTableLength) {
    throw InvalidArgument("code_lp_table: n_max must lie in [1, " +
                          std::to_string(kMaxTableLength) + "]");
  }
  if (k_alphabet < 2) throw InvalidArgument("code_lp_table: alphabet size must be >= 2");
  std::vector<CodeLpOutcome> out;
  for (int n = 1; n <= n_max; ++n) {
    const double space = std::pow(static_cast<double>(k_alphabet), n);
    for (double K = 1.0; K <= space; K *= 2.0) {
      for (int d = 1; d <= n; ++d) out.push_back(code_lp_feasible({n, K, d, k_alphabet}));
    }
  }
  return out;
}

}  // namespace pptd
