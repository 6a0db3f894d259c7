#pragma once

#include <stdexcept>
#include <string>

namespace pptd {

/// Raised when an argument violates a documented precondition
/// (bad dimension, parameter out of range, non-Hermitian input, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a conic solve does not reach an optimal status.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pptd
