#pragma once

#include <stdexcept>
#include <string>

namespace nuctrace {

/// Input rejected before any numerical work (bad parameter, size mismatch,
/// malformed file). The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation started but could not produce a trustworthy result
/// (eigensolver non-convergence, divergence under --require-convergent).
/// The CLI maps this to exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace nuctrace
