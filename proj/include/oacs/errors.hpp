#pragma once

#include <stdexcept>
#include <string>

namespace oacs {

// Sizes or preconditions of an operation were not met by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The manifold does not have the shape an operation requires.
class InvalidManifold : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Near-degenerate input (e.g. a plane of zero area).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Finite-difference step outside the usable range.
class StepSizeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Objective could not be evaluated to a finite value.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oacs
