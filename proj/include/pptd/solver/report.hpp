#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "pptd/hermitian.hpp"

namespace pptd::solver {

/// Default absolute tolerance on the duality gap.
inline constexpr double kDefaultTolerance = 1e-9;

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string_view to_string(Status status);

/// Outcome of a conic solve. Programs are maximisations; `value` is the
/// primal objective at `x` and `dual_value` the objective of the dual
/// certificate, so weak duality reads dual_value >= value - tol.
struct SolveReport {
  Status status = Status::NumericalFailure;
  double value = std::numeric_limits<double>::quiet_NaN();
  double dual_value = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::infinity();
  RVector x;

  /// SDP: one Hermitian multiplier per block.
  std::vector<CMatrix> dual_blocks;
  /// LP: multipliers for the inequality rows followed by the equality rows.
  RVector dual;

  /// Infeasible LP: Farkas vector (u; v), u >= 0, G^T u + E^T v = 0,
  /// h^T u + e^T v < 0. Unbounded LP or SDP: improving ray.
  RVector certificate;
  /// Infeasible SDP: W_b >= 0 with sum_b Tr(A_bi W_b) = 0 and
  /// sum_b Tr(C_b W_b) < 0.
  std::vector<CMatrix> certificate_blocks;

  double primal_infeasibility = std::numeric_limits<double>::infinity();
  double dual_infeasibility = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::string message;

  [[nodiscard]] bool optimal() const { return status == Status::Optimal; }
};

}  // namespace pptd::solver
