#pragma once

#include <stdexcept>
#include <string>

namespace qramph {

/// A caller-supplied parameter is out of range or malformed.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The integration grid cannot resolve the scatterer (dt * kappa too large).
class ResolutionError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

/// A numerical routine failed to reach its requested accuracy.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// QRAM protocol steps were issued in an order the hardware cannot execute.
class ProtocolOrderError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A simulator state no longer satisfies one of its structural invariants.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qramph
