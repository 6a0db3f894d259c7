#include "pptd/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "pptd/errors.hpp"

namespace pptd {

namespace {

using solver::HermitianEntry;
using solver::SparseHermitian;

enum class BasisKind { Diagonal, RealOff, ImagOff };

struct BasisElement {
  BasisKind kind;
  int p;
  int q;
};

std::vector<BasisElement> hermitian_basis(int n, bool real_only) {
  std::vector<BasisElement> out;
  for (int p = 0; p < n; ++p) out.push_back({BasisKind::Diagonal, p, p});
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) out.push_back({BasisKind::RealOff, p, q});
  }
  if (!real_only) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) out.push_back({BasisKind::ImagOff, p, q});
    }
  }
  return out;
}

// Upper-triangle entry value of the basis element at (p, q).
Complex entry_value(const BasisElement& b) {
  switch (b.kind) {
    case BasisKind::Diagonal:
    case BasisKind::RealOff:
      return 1.0;
    case BasisKind::ImagOff:
      return Complex(0.0, 1.0);
  }
  return 0.0;
}

void check_K(double K) {
  if (!(K > 0.0) || !std::isfinite(K)) {
    throw InvalidArgument("K must be a positive real (got " + std::to_string(K) + ")");
  }
}

void check_bipartite(const HermitianOperator& rho) {
  if (!rho.shape().is_bipartite()) throw InvalidArgument("state carries no bipartition");
}

struct Program {
  solver::SdpProblem sdp;
  std::vector<BasisElement> basis;
};

Program build_program(const DensityMatrix& rho, double K) {
  check_K(K);
  check_bipartite(rho);
  const int n = rho.dim();
  const bool real = rho.is_real();
  Program prog;
  prog.basis = hermitian_basis(n, real);
  const int m = static_cast<int>(prog.basis.size());
  const auto pt = partial_transpose_map(rho.shape(), rho.shape().side_b());

  solver::SdpProblem& sdp = prog.sdp;
  sdp.num_vars = m;
  sdp.objective.resize(m);
  const CMatrix& r = rho.matrix();
  for (int i = 0; i < m; ++i) {
    const auto& b = prog.basis[i];
    switch (b.kind) {
      case BasisKind::Diagonal:
        sdp.objective(i) = r(b.p, b.p).real();
        break;
      case BasisKind::RealOff:
        sdp.objective(i) = 2.0 * r(b.p, b.q).real();
        break;
      case BasisKind::ImagOff:
        sdp.objective(i) = 2.0 * r(b.p, b.q).imag();
        break;
    }
  }

  const CMatrix id = CMatrix::Identity(n, n);
  sdp.blocks.resize(4);
  sdp.blocks[0].constant = CMatrix::Zero(n, n);
  sdp.blocks[1].constant = id;
  sdp.blocks[2].constant = id / K;
  sdp.blocks[3].constant = id / K;
  for (auto& block : sdp.blocks) block.coefficients.resize(m);

  for (int i = 0; i < m; ++i) {
    const auto& b = prog.basis[i];
    const Complex v = entry_value(b);
    sdp.blocks[0].coefficients[i] = {{b.p, b.q, v}};
    sdp.blocks[1].coefficients[i] = {{b.p, b.q, -v}};
    // Image of the (p, q) entry under Gamma; the mirrored entry follows.
    const int target = pt[static_cast<std::size_t>(b.p) * n + b.q];
    int tr = target / n;
    int tc = target % n;
    Complex tv = v;
    if (tr > tc) {
      std::swap(tr, tc);
      tv = std::conj(tv);
    }
    sdp.blocks[2].coefficients[i] = {{tr, tc, -tv}};
    sdp.blocks[3].coefficients[i] = {{tr, tc, tv}};
  }
  return prog;
}

CMatrix assemble(const std::vector<BasisElement>& basis, const RVector& x, int n) {
  CMatrix f = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& b = basis[i];
    const Complex v = x(static_cast<Eigen::Index>(i)) * entry_value(b);
    f(b.p, b.q) += v;
    if (b.p != b.q) f(b.q, b.p) += std::conj(v);
  }
  return f;
}

HermitianOperator clamp_negative(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  RVector ev = es.eigenvalues().cwiseMax(0.0);
  CMatrix m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return HermitianOperator::from_hermitian_part(a.shape(), m);
}

}  // namespace

solver::SdpProblem fidelity_program(const DensityMatrix& rho, double K) {
  return build_program(rho, K).sdp;
}

FidelityResult fidelity_ppt(const DensityMatrix& rho, double K, double tol) {
  Program prog = build_program(rho, K);
  const solver::SolveReport rep = solver::solve_sdp(prog.sdp, tol);
  if (!rep.optimal()) {
    throw SolverError("fidelity SDP (dim " + std::to_string(rho.dim()) + ", K " +
                      std::to_string(K) + ", " + std::to_string(prog.sdp.num_vars) +
                      " variables) ended with status " + std::string(solver::to_string(rep.status)) +
                      ": " + rep.message);
  }
  const int n = rho.dim();
  HermitianOperator F = HermitianOperator::from_hermitian_part(rho.shape(),
                                                               assemble(prog.basis, rep.x, n));
  HermitianOperator B = HermitianOperator::from_hermitian_part(rho.shape(), rep.dual_blocks[2]);
  HermitianOperator C = HermitianOperator::from_hermitian_part(rho.shape(), rep.dual_blocks[3]);
  HermitianOperator D = partial_transpose(B - C);
  return FidelityResult{rep.value, clamp_negative(F), std::move(D), rep.dual_value, rep.gap,
                        rep.iterations};
}

FidelityResult fidelity_ppt(const FidelityQuery& query, double tol) {
  return fidelity_ppt(query.rho, query.K, tol);
}

double dual_bound(const DensityMatrix& rho, double K, const HermitianOperator& D) {
  check_K(K);
  check_bipartite(rho);
  if (!(D.shape() == rho.shape())) throw InvalidArgument("dual_bound: D and rho shapes differ");
  const HermitianOperator diff = static_cast<const HermitianOperator&>(rho) - D;
  const double pos = diff.eigenvalues().cwiseMax(0.0).sum();
  return pos + trace_norm(partial_transpose(D)) / K;
}

double fidelity_isotropic_closed(int d, double f, double K) {
  if (d < 2) throw InvalidArgument("fidelity_isotropic_closed: d must be at least 2");
  if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("fidelity_isotropic_closed: f outside [0, 1]");
  check_K(K);
  if (K <= 1.0) return 1.0;
  if (f * d <= 1.0) return 1.0 / K;
  if (K <= d) return 1.0 / K + (f * d - 1.0) / (d - 1.0) * (1.0 - 1.0 / K);
  return f * d / K;
}

double fidelity_werner1_closed(int d, double K) {
  if (d < 2) throw InvalidArgument("fidelity_werner1_closed: d must be at least 2");
  check_K(K);
  return std::min(1.0, (d + 2.0) / (d * K));
}

double fidelity_maxent_closed(int d, double K) {
  if (d < 1) throw InvalidArgument("fidelity_maxent_closed: d must be at least 1");
  check_K(K);
  return std::min(1.0, d / K);
}

KMonotoneTable k_monotone_checks(const DensityMatrix& rho, std::span<const double> K_grid,
                                 double tol) {
  if (!std::is_sorted(K_grid.begin(), K_grid.end())) {
    throw InvalidArgument("k_monotone_checks: K grid must be ascending");
  }
  constexpr double kSlack = 1e-6;
  KMonotoneTable table{{}, true, true};
  for (double K : K_grid) {
    KMonotoneRow row{K, fidelity_ppt(rho, K, tol).value, 0.0, std::nullopt};
    row.k_times_f = K * row.fidelity;
    if (K > 1.0) row.normalized = (row.k_times_f - 1.0) / (K - 1.0);
    if (!table.rows.empty()) {
      const auto& prev = table.rows.back();
      if (row.k_times_f < prev.k_times_f - kSlack) table.k_times_f_nondecreasing = false;
      if (row.normalized && prev.normalized && *row.normalized > *prev.normalized + kSlack) {
        table.normalized_nonincreasing = false;
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

TensorBounds tensor_bounds(const DensityMatrix& rho1, const DensityMatrix& rho2, double K,
                           double K_prime, double tol) {
  check_K(K);
  check_K(K_prime);
  const double lower =
      fidelity_ppt(rho1, K_prime, tol).value * fidelity_ppt(rho2, K / K_prime, tol).value;
  const double neg = trace_norm(partial_transpose(rho2));
  const double upper = fidelity_ppt(rho1, K / neg, tol).value;
  return {lower, upper};
}

}  // namespace pptd
