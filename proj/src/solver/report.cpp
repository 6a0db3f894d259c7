#include "pptd/solver/report.hpp"

namespace pptd::solver {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "optimal";
    case Status::Infeasible:
      return "infeasible";
    case Status::Unbounded:
      return "unbounded";
    case Status::NumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

}  // namespace pptd::solver
