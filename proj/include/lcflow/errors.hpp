#pragma once

#include <stdexcept>
#include <string>

namespace lcflow {

/// Invalid configuration or arguments (bad grid size, non-positive moduli, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// NaN/Inf encountered, or a quantity left its admissible range during a run.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or stream problems (unreadable, truncated, malformed).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lcflow
