#pragma once

#include <stdexcept>
#include <string>

namespace permutwin {

// Input that does not describe a well-formed object (bad text, duplicate
// values, out-of-range or unsorted positions).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed input that violates an operation's precondition.
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exponential oracles refuse inputs above their cap.
class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Raised when a case analysis that is supposed to be exhaustive is not.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace permutwin
