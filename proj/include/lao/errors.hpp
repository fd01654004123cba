#pragma once

#include <stdexcept>
#include <string>

namespace lao {

/// Bad input: alphabet mismatch, out-of-range index, malformed distribution.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Solver could not produce a value (disjoint supports, no convergence,
/// combinatorial guard exceeded).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prescribed exponents do not admit an LAO test and the caller did not
/// ask to build one anyway.
class ConditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lao
