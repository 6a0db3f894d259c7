#include "pptd/solver/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "pptd/errors.hpp"

namespace pptd::solver {

void SdpProblem::validate() const {
  if (num_vars < 0) throw InvalidArgument("SdpProblem: negative variable count");
  if (objective.size() != num_vars) {
    throw InvalidArgument("SdpProblem: objective has " + std::to_string(objective.size()) +
                          " entries, expected " + std::to_string(num_vars));
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const SdpBlock& block = blocks[b];
    const int n = block.dim();
    if (block.constant.cols() != n) throw InvalidArgument("SdpProblem: block constant not square");
    if ((block.constant - block.constant.adjoint()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, block.constant.cwiseAbs().maxCoeff())) {
      throw InvalidArgument("SdpProblem: block constant not Hermitian");
    }
    if (static_cast<int>(block.coefficients.size()) != num_vars) {
      throw InvalidArgument("SdpProblem: block " + std::to_string(b) +
                            " needs one coefficient matrix per variable");
    }
    for (const auto& coeff : block.coefficients) {
      for (const auto& e : coeff) {
        if (e.row < 0 || e.col < e.row || e.col >= n) {
          throw InvalidArgument("SdpProblem: coefficient entry outside the upper triangle");
        }
        if (e.row == e.col && e.value.imag() != 0.0) {
          throw InvalidArgument("SdpProblem: diagonal coefficient must be real");
        }
      }
    }
  }
}

CMatrix SdpProblem::block_value(int block, const RVector& x) const {
  const SdpBlock& b = blocks.at(static_cast<std::size_t>(block));
  CMatrix out = b.constant;
  for (int i = 0; i < num_vars; ++i) {
    if (x(i) == 0.0) continue;
    for (const auto& e : b.coefficients[i]) {
      out(e.row, e.col) += x(i) * e.value;
      if (e.row != e.col) out(e.col, e.row) += x(i) * std::conj(e.value);
    }
  }
  return out;
}

namespace {

// Entry of a real symmetric coefficient matrix, both triangles listed.
struct Entry {
  int r;
  int c;
  double v;
};
using SparseSym = std::vector<Entry>;

struct RealBlock {
  RMatrix constant;
  std::vector<SparseSym> coeffs;
  bool embedded = false;
};

bool block_is_complex(const SdpBlock& block) {
  if (block.constant.imag().cwiseAbs().maxCoeff() != 0.0) return true;
  for (const auto& coeff : block.coefficients) {
    for (const auto& e : coeff) {
      if (e.value.imag() != 0.0) return true;
    }
  }
  return false;
}

void push_sym(SparseSym& out, int r, int c, double v) {
  if (v == 0.0) return;
  out.push_back({r, c, v});
  if (r != c) out.push_back({c, r, v});
}

RealBlock to_real(const SdpBlock& block) {
  RealBlock out;
  const int n = block.dim();
  out.embedded = block_is_complex(block);
  if (!out.embedded) {
    out.constant = block.constant.real();
  } else {
    out.constant.resize(2 * n, 2 * n);
    out.constant << block.constant.real(), -block.constant.imag(), block.constant.imag(),
        block.constant.real();
  }
  out.coeffs.resize(block.coefficients.size());
  for (std::size_t i = 0; i < block.coefficients.size(); ++i) {
    SparseSym& dst = out.coeffs[i];
    for (const auto& e : block.coefficients[i]) {
      const double re = e.value.real();
      const double im = e.value.imag();
      if (!out.embedded) {
        push_sym(dst, e.row, e.col, re);
        continue;
      }
      // [[Re, -Im], [Im, Re]] with Im antisymmetric.
      push_sym(dst, e.row, e.col, re);
      push_sym(dst, e.row + n, e.col + n, re);
      if (e.row != e.col && im != 0.0) {
        push_sym(dst, e.row + n, e.col, im);
        push_sym(dst, e.col + n, e.row, -im);
      }
    }
  }
  return out;
}

CMatrix to_hermitian(const RMatrix& m, bool embedded) {
  if (!embedded) return m.cast<Complex>();
  const Eigen::Index n = m.rows() / 2;
  CMatrix out(n, n);
  out.real() = m.topLeftCorner(n, n) + m.bottomRightCorner(n, n);
  out.imag() = m.bottomLeftCorner(n, n) - m.topRightCorner(n, n);
  return out;
}

// Tr(A M) for sparse symmetric A.
double trace_with(const SparseSym& a, const RMatrix& m) {
  double acc = 0.0;
  for (const auto& e : a) acc += e.v * m(e.c, e.r);
  return acc;
}

void add_map(const RealBlock& block, const RVector& x, RMatrix& out) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    if (xi == 0.0) continue;
    for (const auto& e : block.coeffs[i]) out(e.r, e.c) += xi * e.v;
  }
}

RMatrix symmetrize(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

double min_eigenvalue(const RMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Largest alpha with M + alpha dM PSD, given the Cholesky factor of M.
double max_step(const Eigen::LLT<RMatrix>& chol, const RMatrix& dm) {
  RMatrix s = chol.matrixL().solve(dm);
  s = chol.matrixL().solve(s.transpose()).transpose();
  const double lmin = min_eigenvalue(symmetrize(s));
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

struct IpmResult {
  Status status = Status::NumericalFailure;
  RVector x;
  std::vector<RMatrix> X;
  double pobj = 0.0;
  double dobj = 0.0;
  double pinf = 0.0;
  double dinf = 0.0;
  int iterations = 0;
  std::string message;
  RVector ray;
  std::vector<RMatrix> farkas;
};

class InteriorPoint {
 public:
  InteriorPoint(const std::vector<RealBlock>& blocks, const RVector& c, double c0,
                const SdpOptions& opt)
      : blocks_(blocks), c_(c), c0_(c0), opt_(opt), m_(static_cast<int>(c.size())) {}

  IpmResult run();

 private:
  void residuals();
  void build_schur();
  bool factor_schur();
  void direction(const std::vector<RMatrix>& rc, RVector& dx, std::vector<RMatrix>& dZ,
                 std::vector<RMatrix>& dX) const;
  bool check_unbounded(IpmResult& out) const;
  bool check_infeasible(IpmResult& out) const;

  const std::vector<RealBlock>& blocks_;
  const RVector& c_;
  double c0_;
  SdpOptions opt_;
  int m_;

  RVector x_;
  std::vector<RMatrix> X_, Z_, Zinv_, Rz_;
  RVector rd_;
  RMatrix schur_;
  Eigen::LLT<RMatrix> schur_chol_;
  double norm_c_ = 0.0;
  double norm_constant_ = 0.0;
};

void InteriorPoint::residuals() {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Rz_[b] = blocks_[b].constant - Z_[b];
    add_map(blocks_[b], x_, Rz_[b]);
  }
  rd_ = -c_;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (int i = 0; i < m_; ++i) rd_(i) -= trace_with(blocks_[b].coeffs[i], X_[b]);
  }
}

void InteriorPoint::build_schur() {
  // M_ij = sum_b Tr(A_bi X_b A_bj Z_b^{-1})
  schur_.setZero(m_, m_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& A = blocks_[b].coeffs;
    const RMatrix& X = X_[b];
    const RMatrix& Y = Zinv_[b];
    for (int i = 0; i < m_; ++i) {
      const SparseSym& ai = A[i];
      if (ai.empty()) continue;
      for (int j = i; j < m_; ++j) {
        const SparseSym& aj = A[j];
        if (aj.empty()) continue;
        double acc = 0.0;
        for (const auto& p : ai) {
          for (const auto& q : aj) acc += p.v * q.v * X(p.c, q.r) * Y(q.c, p.r);
        }
        schur_(i, j) += acc;
      }
    }
  }
  schur_.triangularView<Eigen::StrictlyLower>() = schur_.transpose();
}

bool InteriorPoint::factor_schur() {
  schur_chol_.compute(schur_);
  if (schur_chol_.info() == Eigen::Success) return true;
  const double scale = std::max(1e-300, schur_.diagonal().cwiseAbs().maxCoeff());
  for (double reg = 1e-14; reg <= 1e-6; reg *= 100.0) {
    RMatrix shifted = schur_;
    shifted.diagonal().array() += reg * scale;
    schur_chol_.compute(shifted);
    if (schur_chol_.info() == Eigen::Success) return true;
  }
  return false;
}

void InteriorPoint::direction(const std::vector<RMatrix>& rc, RVector& dx,
                              std::vector<RMatrix>& dZ, std::vector<RMatrix>& dX) const {
  RVector rhs = -rd_;
  std::vector<RMatrix> t(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    t[b] = rc[b] - X_[b] * Rz_[b] * Zinv_[b];
    for (int i = 0; i < m_; ++i) rhs(i) += trace_with(blocks_[b].coeffs[i], t[b]);
  }
  dx = schur_chol_.solve(rhs);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    dZ[b] = Rz_[b];
    add_map(blocks_[b], dx, dZ[b]);
    dX[b] = symmetrize(rc[b] - X_[b] * dZ[b] * Zinv_[b]);
  }
}

bool InteriorPoint::check_unbounded(IpmResult& out) const {
  const double nx = x_.norm();
  if (nx == 0.0) return false;
  const RVector d = x_ / nx;
  if (c_.dot(d) <= 1e-9) return false;
  for (const auto& block : blocks_) {
    RMatrix ad = RMatrix::Zero(block.constant.rows(), block.constant.cols());
    add_map(block, d, ad);
    if (min_eigenvalue(ad) < -1e-7) return false;
  }
  out.status = Status::Unbounded;
  out.ray = d;
  out.message = "objective unbounded along a recession direction";
  return true;
}

bool InteriorPoint::check_infeasible(IpmResult& out) const {
  double tr = 0.0;
  for (const auto& X : X_) tr += X.trace();
  if (tr <= 0.0) return false;
  double ctx = 0.0;
  RVector atx = RVector::Zero(m_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    ctx += (blocks_[b].constant.array() * X_[b].array()).sum() / tr;
    for (int i = 0; i < m_; ++i) atx(i) += trace_with(blocks_[b].coeffs[i], X_[b]) / tr;
  }
  if (ctx >= -1e-9 || atx.norm() > 1e-7) return false;
  out.status = Status::Infeasible;
  out.farkas.clear();
  for (const auto& X : X_) out.farkas.push_back(X / tr);
  out.message = "primal infeasible: diverging dual multipliers certify infeasibility";
  return true;
}

IpmResult InteriorPoint::run() {
  IpmResult out;
  const std::size_t nb = blocks_.size();
  int ntot = 0;
  double max_a = 0.0;
  for (const auto& block : blocks_) {
    ntot += static_cast<int>(block.constant.rows());
    norm_constant_ = std::max(norm_constant_, block.constant.norm());
  }
  norm_c_ = c_.norm();

  // Starting point scaled as in CSDP: X = 10 alpha I, Z = 10 beta I.
  double alpha = 0.0;
  RVector anorm = RVector::Zero(m_);
  for (const auto& block : blocks_) {
    for (int i = 0; i < m_; ++i) {
      double s = 0.0;
      for (const auto& e : block.coeffs[i]) s += e.v * e.v;
      anorm(i) += s;
    }
  }
  for (int i = 0; i < m_; ++i) {
    anorm(i) = std::sqrt(anorm(i));
    max_a = std::max(max_a, anorm(i));
    alpha = std::max(alpha, ntot * (1.0 + std::abs(c_(i))) / (1.0 + anorm(i)));
  }
  const double beta = (1.0 + std::max(max_a, norm_constant_)) / std::sqrt(std::max(ntot, 1));
  alpha = std::max(alpha, 1.0);

  x_ = RVector::Zero(m_);
  X_.resize(nb);
  Z_.resize(nb);
  Zinv_.resize(nb);
  Rz_.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const Eigen::Index n = blocks_[b].constant.rows();
    X_[b] = 10.0 * alpha * RMatrix::Identity(n, n);
    Z_[b] = 10.0 * beta * RMatrix::Identity(n, n);
  }

  std::vector<RMatrix> rc(nb), dZa(nb), dXa(nb), dZ(nb), dX(nb);
  RVector dx;
  int stalled = 0;

  for (int iter = 0; iter <= opt_.max_iterations; ++iter) {
    out.iterations = iter;
    residuals();
    double pinf = 0.0;
    for (const auto& r : Rz_) pinf = std::max(pinf, r.norm());
    pinf /= (1.0 + norm_constant_);
    const double dinf = rd_.norm() / (1.0 + norm_c_);
    double dobj = c0_;
    double xz = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      dobj += (blocks_[b].constant.array() * X_[b].array()).sum();
      xz += (X_[b].array() * Z_[b].array()).sum();
    }
    const double pobj = c_.dot(x_) + c0_;
    const double mu = xz / std::max(ntot, 1);
    out.pobj = pobj;
    out.dobj = dobj;
    out.pinf = pinf;
    out.dinf = dinf;

    if (pinf <= opt_.feasibility_tol && dinf <= opt_.feasibility_tol &&
        std::abs(pobj - dobj) <= opt_.tol) {
      out.status = Status::Optimal;
      break;
    }
    if (iter == opt_.max_iterations) {
      out.message = "iteration limit reached";
      break;
    }
    double trace_x = 0.0;
    for (const auto& X : X_) trace_x += X.trace();
    if (x_.norm() > 1e10 && check_unbounded(out)) break;
    if (trace_x > 1e10 && check_infeasible(out)) break;
    if (!std::isfinite(pobj) || !std::isfinite(dobj)) {
      out.message = "non-finite iterate";
      break;
    }

    std::vector<Eigen::LLT<RMatrix>> zchol(nb), xchol(nb);
    bool ok = true;
    for (std::size_t b = 0; b < nb; ++b) {
      zchol[b].compute(Z_[b]);
      xchol[b].compute(X_[b]);
      if (zchol[b].info() != Eigen::Success || xchol[b].info() != Eigen::Success) {
        ok = false;
        break;
      }
      Zinv_[b] = zchol[b].solve(RMatrix::Identity(Z_[b].rows(), Z_[b].cols()));
      Zinv_[b] = symmetrize(Zinv_[b]);
    }
    if (!ok) {
      out.message = "iterate lost positive definiteness";
      break;
    }
    build_schur();
    if (!factor_schur()) {
      out.message = "Schur complement factorization failed";
      break;
    }

    // Predictor (affine scaling) direction.
    for (std::size_t b = 0; b < nb; ++b) rc[b] = -X_[b];
    direction(rc, dx, dZa, dXa);
    double ap = 1.0;
    double ad = 1.0;
    for (std::size_t b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(zchol[b], dZa[b]));
      ad = std::min(ad, max_step(xchol[b], dXa[b]));
    }
    double xz_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      xz_aff += ((X_[b] + ad * dXa[b]).array() * (Z_[b] + ap * dZa[b]).array()).sum();
    }
    const double mu_aff = xz_aff / std::max(ntot, 1);
    double sigma = mu > 0.0 ? std::pow(std::max(mu_aff, 0.0) / mu, 3) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector.
    for (std::size_t b = 0; b < nb; ++b) {
      rc[b] = sigma * mu * Zinv_[b] - X_[b] - dXa[b] * dZa[b] * Zinv_[b];
    }
    RVector dxc;
    direction(rc, dxc, dZ, dX);
    double sp = std::numeric_limits<double>::infinity();
    double sd = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb; ++b) {
      sp = std::min(sp, max_step(zchol[b], dZ[b]));
      sd = std::min(sd, max_step(xchol[b], dX[b]));
    }
    constexpr double kFraction = 0.95;
    ap = std::min(1.0, kFraction * sp);
    ad = std::min(1.0, kFraction * sd);

    x_ += ap * dxc;
    for (std::size_t b = 0; b < nb; ++b) {
      Z_[b] = symmetrize(Z_[b] + ap * dZ[b]);
      X_[b] = symmetrize(X_[b] + ad * dX[b]);
    }
    stalled = (ap < 1e-10 && ad < 1e-10) ? stalled + 1 : 0;
    if (stalled >= 3) {
      out.message = "step length stalled";
      break;
    }
  }
  out.x = x_;
  out.X = X_;
  if (out.status == Status::NumericalFailure && out.message.empty()) {
    out.message = "no convergence";
  }
  return out;
}

// max t s.t. C_b + A_b(x) - t I >= 0, t <= 1. A negative optimum certifies
// infeasibility; the multipliers of the original blocks form the certificate.
IpmResult phase_one(const std::vector<RealBlock>& blocks, int m, const SdpOptions& opt,
                    double& t_opt) {
  std::vector<RealBlock> aug = blocks;
  for (auto& block : aug) {
    SparseSym minus_id;
    for (int i = 0; i < block.constant.rows(); ++i) minus_id.push_back({i, i, -1.0});
    block.coeffs.push_back(std::move(minus_id));
  }
  RealBlock cap;
  cap.constant = RMatrix::Ones(1, 1);
  cap.coeffs.assign(static_cast<std::size_t>(m) + 1, SparseSym{});
  cap.coeffs[m].push_back({0, 0, -1.0});
  aug.push_back(std::move(cap));
  RVector c = RVector::Zero(m + 1);
  c(m) = 1.0;
  SdpOptions o = opt;
  o.tol = std::min(opt.tol, 1e-9);
  InteriorPoint ipm(aug, c, 0.0, o);
  IpmResult res = ipm.run();
  t_opt = res.pobj;
  return res;
}

}  // namespace

SolveReport solve_sdp(const SdpProblem& problem, double tol) {
  SdpOptions opt;
  opt.tol = tol;
  return solve_sdp(problem, opt);
}

SolveReport solve_sdp(const SdpProblem& problem, const SdpOptions& options) {
  problem.validate();
  if (!(options.tol > 0.0)) throw InvalidArgument("solve_sdp: tolerance must be positive");

  std::vector<RealBlock> blocks;
  blocks.reserve(problem.blocks.size());
  for (const auto& b : problem.blocks) blocks.push_back(to_real(b));

  SolveReport report;
  InteriorPoint ipm(blocks, problem.objective, problem.objective_constant, options);
  IpmResult res = ipm.run();

  report.status = res.status;
  report.iterations = res.iterations;
  report.message = res.message;
  report.x = res.x;
  report.value = res.pobj;
  report.dual_value = res.dobj;
  report.gap = std::abs(res.pobj - res.dobj);
  report.primal_infeasibility = res.pinf;
  report.dual_infeasibility = res.dinf;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    report.dual_blocks.push_back(to_hermitian(res.X[b], blocks[b].embedded));
  }

  if (res.status == Status::Optimal) {
    // Re-evaluate the blocks at x; the status promises PSD to -10 tol.
    for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
      const CMatrix z = problem.block_value(static_cast<int>(b), report.x);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(z, Eigen::EigenvaluesOnly);
      if (z.rows() > 0 && es.eigenvalues()(0) < -10.0 * options.tol) {
        report.status = Status::NumericalFailure;
        report.message = "solution violates block " + std::to_string(b) + " semidefiniteness";
      }
    }
  } else if (res.status == Status::Unbounded) {
    report.certificate = res.ray;
    report.value = std::numeric_limits<double>::infinity();
  } else if (res.status == Status::Infeasible) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      report.certificate_blocks.push_back(to_hermitian(res.farkas[b], blocks[b].embedded));
    }
    report.value = -std::numeric_limits<double>::infinity();
  } else {
    double t_opt = 0.0;
    IpmResult p1 = phase_one(blocks, problem.num_vars, options, t_opt);
    if (p1.status == Status::Optimal && t_opt < -1e-8) {
      report.status = Status::Infeasible;
      report.message = "phase-1 optimum " + std::to_string(t_opt) + " < 0: no feasible point";
      report.value = -std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        report.certificate_blocks.push_back(to_hermitian(p1.X[b], blocks[b].embedded));
      }
    } else {
      report.message += "; phase-1 optimum " + std::to_string(t_opt);
    }
  }
  return report;
}

}  // namespace pptd::solver
