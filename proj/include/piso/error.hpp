#pragma once

#include <stdexcept>
#include <string>

namespace piso {

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative method fails to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace piso
