#pragma once

#include <stdexcept>
#include <string>

namespace radgab {

/// Raised when an argument violates an operation's precondition. The message
/// names the offending parameter.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a quadrature rule is too coarse for the requested oscillation.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an iterative method fails to reach its tolerance and the caller
/// asked for a hard failure.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace radgab
