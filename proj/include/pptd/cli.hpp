#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pptd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSolverError = 3;

/// Tolerance bounds accepted from --tol or PPT_DISTILL_TOL.
inline constexpr double kMinTolerance = 1e-10;
inline constexpr double kMaxTolerance = 1e-3;

enum class Format { Json, Csv };

/// Parsed command line. Unset numeric flags stay empty so each subcommand
/// can report the ones it needs.
struct RunConfig {
  std::string subcommand;
  std::string family;
  std::string state_path;
  std::string alpha_path;
  std::optional<int> d;
  std::optional<double> f;
  std::optional<double> p;
  std::optional<double> K;
  std::optional<int> n;
  std::optional<int> d_min;
  int alphabet = 2;
  int n_max = 8;
  std::optional<Format> format;
  double tol;
};

/// Default tolerance: PPT_DISTILL_TOL if set, else the solver default.
/// Throws InvalidArgument for unparsable or out-of-range values.
double default_tolerance();

/// Formats with 12 significant digits.
std::string format_number(double v);

/// Entry point. Writes results to `out` and diagnostics to `err`.
/// Returns kExitOk, kExitInputError or kExitSolverError.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pptd::cli
