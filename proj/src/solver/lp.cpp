#include "pptd/solver/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "pptd/errors.hpp"

namespace pptd::solver {

void LpProblem::validate() const {
  const Eigen::Index n = objective.size();
  if (G.rows() > 0 && G.cols() != n) throw InvalidArgument("LpProblem: G has wrong column count");
  if (E.rows() > 0 && E.cols() != n) throw InvalidArgument("LpProblem: E has wrong column count");
  if (h.size() != G.rows()) throw InvalidArgument("LpProblem: h and G row counts differ");
  if (e.size() != E.rows()) throw InvalidArgument("LpProblem: e and E row counts differ");
  if (!objective.allFinite() || !G.allFinite() || !h.allFinite() || !E.allFinite() ||
      !e.allFinite()) {
    throw InvalidArgument("LpProblem: non-finite data");
  }
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-13;
constexpr double kCostTol = 1e-11;

// Columns: [x+ (n) | x- (n) | slack (p) | artificial (m)] then rhs.
class Tableau {
 public:
  Tableau(const LpProblem& lp) : n_(lp.num_vars()), p_(static_cast<int>(lp.G.rows())) {
    m_ = p_ + static_cast<int>(lp.E.rows());
    cols_ = 2 * n_ + p_ + m_;
    t_ = RMatrix::Zero(m_ + 1, cols_ + 1);
    row_factor_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      RVector a = r < p_ ? RVector(lp.G.row(r).transpose()) : RVector(lp.E.row(r - p_).transpose());
      double rhs = r < p_ ? lp.h(r) : lp.e(r - p_);
      double scale = a.size() > 0 ? a.cwiseAbs().maxCoeff() : 0.0;
      if (scale == 0.0) scale = 1.0;
      double sign = rhs < 0.0 ? -1.0 : 1.0;
      row_factor_(r) = sign / scale;
      a *= row_factor_(r);
      rhs *= row_factor_(r);
      for (int j = 0; j < n_; ++j) {
        t_(r + 1, j) = a(j);
        t_(r + 1, n_ + j) = -a(j);
      }
      if (r < p_) t_(r + 1, 2 * n_ + r) = row_factor_(r);
      t_(r + 1, art(r)) = 1.0;
      t_(r + 1, cols_) = rhs;
    }
    a0_ = t_.bottomRows(m_);
    basis_.resize(m_);
    for (int r = 0; r < m_; ++r) basis_[r] = art(r);
    cost_ = RVector::Zero(cols_);
    c_struct_ = RVector::Zero(cols_);
    for (int j = 0; j < n_; ++j) {
      c_struct_(j) = lp.objective(j);
      c_struct_(n_ + j) = -lp.objective(j);
    }
  }

  [[nodiscard]] int art(int r) const { return 2 * n_ + p_ + r; }
  [[nodiscard]] bool is_art(int j) const { return j >= 2 * n_ + p_; }

  void set_phase(int phase) {
    phase_ = phase;
    if (phase == 1) {
      cost_.setZero();
      cost_.tail(m_).setConstant(-1.0);
    } else {
      cost_ = c_struct_;
    }
    // Objective row: reduced costs d_j and -z in the rhs cell.
    for (int j = 0; j <= cols_; ++j) {
      double acc = j < cols_ ? cost_(j) : 0.0;
      for (int r = 0; r < m_; ++r) acc -= cost_(basis_[r]) * t_(r + 1, j);
      t_(0, j) = acc;
    }
  }

  void pivot(int r, int j) {
    const double piv = t_(r + 1, j);
    t_.row(r + 1) /= piv;
    for (int i = 0; i <= m_; ++i) {
      if (i == r + 1) continue;
      const double f = t_(i, j);
      if (f != 0.0) t_.row(i) -= f * t_.row(r + 1);
    }
    // Flush cancellation residue so it cannot be chosen as a later pivot.
    t_ = t_.unaryExpr([](double v) { return std::abs(v) < kDropTol ? 0.0 : v; });
    t_.col(j).setZero();
    t_(r + 1, j) = 1.0;
    basis_[r] = j;
  }

  enum class Outcome { Optimal, Unbounded, PivotLimit };

  Outcome iterate(int& pivots, int max_pivots, int& unbounded_col) {
    int degenerate = 0;
    bool bland = false;
    while (true) {
      int enter = -1;
      double best = kCostTol;
      for (int j = 0; j < cols_; ++j) {
        if (phase_ == 2 && is_art(j)) continue;
        if (t_(0, j) > best) {
          enter = j;
          if (bland) break;
          best = t_(0, j);
        }
      }
      if (enter < 0) return Outcome::Optimal;
      // Ratio test; near-ties go to the largest pivot (Bland mode: lowest basis index).
      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        const double a = t_(r + 1, enter);
        if (a <= kPivotTol) continue;
        const double q = std::max(t_(r + 1, cols_), 0.0) / a;
        if (q < ratio - 1e-12) {
          ratio = q;
          leave = r;
        } else if (q <= ratio + 1e-12) {
          const bool better = bland ? basis_[r] < basis_[leave] : a > t_(leave + 1, enter);
          if (better) {
            ratio = std::min(ratio, q);
            leave = r;
          }
        }
      }
      if (leave < 0) {
        unbounded_col = enter;
        return Outcome::Unbounded;
      }
      degenerate = ratio <= 1e-14 ? degenerate + 1 : 0;
      if (degenerate > 50) bland = true;
      pivot(leave, enter);
      if (++pivots > max_pivots) return Outcome::PivotLimit;
    }
  }

  // Pivots zero-valued artificials out of the basis where possible.
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!is_art(basis_[r])) continue;
      int best = -1;
      double mag = 1e-9;
      for (int j = 0; j < 2 * n_ + p_; ++j) {
        if (std::abs(t_(r + 1, j)) > mag) {
          mag = std::abs(t_(r + 1, j));
          best = j;
        }
      }
      if (best >= 0) pivot(r, best);
    }
  }

  [[nodiscard]] double objective_value() const { return -t_(0, cols_); }

  // Point and row multipliers are recomputed from the initial tableau for the
  // final basis; the running tableau accumulates round-off over many pivots.
  [[nodiscard]] RVector primal() const {
    RVector full = RVector::Zero(cols_);
    const RVector xb = basis_lu().solve(RVector(a0_.col(cols_)));
    for (int r = 0; r < m_; ++r) full(basis_[r]) = xb(r);
    return full.head(n_) - full.segment(n_, n_);
  }

  // Multipliers of the original rows, rescaled by the row factors.
  [[nodiscard]] RVector row_duals() const {
    RVector cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = cost_(basis_[r]);
    const RVector y = basis_lu().transpose().solve(cb);
    return y.cwiseProduct(row_factor_);
  }

  [[nodiscard]] Eigen::PartialPivLU<RMatrix> basis_lu() const {
    RMatrix b(m_, m_);
    for (int r = 0; r < m_; ++r) b.col(r) = a0_.col(basis_[r]);
    return Eigen::PartialPivLU<RMatrix>(b);
  }

  [[nodiscard]] RVector ray(int col) const {
    RVector full = RVector::Zero(cols_);
    full(col) = 1.0;
    for (int r = 0; r < m_; ++r) full(basis_[r]) = -t_(r + 1, col);
    return full.head(n_) - full.segment(n_, n_);
  }

 private:
  int n_;
  int p_;
  int m_ = 0;
  int cols_ = 0;
  int phase_ = 1;
  RMatrix t_;
  RMatrix a0_;
  RVector row_factor_;
  std::vector<int> basis_;
  RVector cost_;
  RVector c_struct_;
};

double max_abs(const RVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

SolveReport solve_lp(const LpProblem& problem, double tol) {
  LpOptions opt;
  opt.tol = tol;
  return solve_lp(problem, opt);
}

SolveReport solve_lp(const LpProblem& problem, const LpOptions& options) {
  problem.validate();
  if (!(options.tol > 0.0)) throw InvalidArgument("solve_lp: tolerance must be positive");
  const int p = static_cast<int>(problem.G.rows());

  SolveReport report;
  Tableau tab(problem);
  int pivots = 0;
  int col = -1;

  tab.set_phase(1);
  auto outcome = tab.iterate(pivots, options.max_pivots, col);
  report.iterations = pivots;
  if (outcome == Tableau::Outcome::PivotLimit) {
    report.message = "pivot limit reached in phase 1";
    return report;
  }
  const double residual = -tab.objective_value();
  report.primal_infeasibility = std::max(residual, 0.0);
  if (residual > options.feasibility_tol) {
    RVector y = tab.row_duals();
    const double scale = max_abs(y);
    if (scale > 0.0) y /= scale;
    report.status = Status::Infeasible;
    report.certificate = y;
    report.value = -std::numeric_limits<double>::infinity();
    report.message = "phase-1 residual " + std::to_string(residual);
    return report;
  }

  tab.drive_out_artificials();
  tab.set_phase(2);
  outcome = tab.iterate(pivots, options.max_pivots, col);
  report.iterations = pivots;
  if (outcome == Tableau::Outcome::PivotLimit) {
    report.message = "pivot limit reached in phase 2";
    return report;
  }
  if (outcome == Tableau::Outcome::Unbounded) {
    RVector d = tab.ray(col);
    const double scale = max_abs(d);
    if (scale > 0.0) d /= scale;
    report.status = Status::Unbounded;
    report.certificate = d;
    report.value = std::numeric_limits<double>::infinity();
    report.message = "objective unbounded";
    return report;
  }

  report.x = tab.primal();
  report.dual = tab.row_duals();
  report.value = problem.objective.dot(report.x);
  double dual_value = 0.0;
  if (p > 0) dual_value += problem.h.dot(report.dual.head(p));
  if (problem.E.rows() > 0) dual_value += problem.e.dot(report.dual.tail(problem.E.rows()));
  report.dual_value = dual_value;
  report.gap = std::abs(report.value - dual_value);

  double pinf = 0.0;
  if (p > 0) pinf = std::max(pinf, (problem.G * report.x - problem.h).maxCoeff());
  if (problem.E.rows() > 0) {
    pinf = std::max(pinf, (problem.E * report.x - problem.e).cwiseAbs().maxCoeff());
  }
  report.primal_infeasibility = std::max(pinf, 0.0);
  RVector stationarity = -problem.objective;
  if (p > 0) stationarity += problem.G.transpose() * report.dual.head(p);
  if (problem.E.rows() > 0) stationarity += problem.E.transpose() * report.dual.tail(problem.E.rows());
  report.dual_infeasibility = max_abs(stationarity);
  if (p > 0) report.dual_infeasibility = std::max(report.dual_infeasibility, -report.dual.head(p).minCoeff());

  const double scale = 1.0 + std::abs(report.value);
  if (report.gap <= std::max(options.tol, 1e-9 * scale)) {
    report.status = Status::Optimal;
  } else {
    report.message = "duality gap " + std::to_string(report.gap) + " exceeds tolerance";
  }
  return report;
}

}  // namespace pptd::solver
