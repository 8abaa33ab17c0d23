#pragma once

#include <stdexcept>
#include <string>

namespace conedual {

/// Operands disagree on ambient dimension, or an index is out of range.
class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested operation is not available under the active scalar policy
/// (e.g. double-description conversion of a second-order cone, or a float-only
/// variant queried under the exact policy).
class PolicyError : public std::runtime_error {
 public:
  explicit PolicyError(const std::string& what) : std::runtime_error(what) {}
};

/// Input data violates a documented precondition (h = 0, h outside the dual
/// cone, malformed serialization, tolerance out of range, ...).
class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(const std::string& what) : std::runtime_error(what) {}
};

/// A proved invariant failed at runtime.  Reaching this is a bug in the
/// library or a refuted invariant, never a user error.
class InternalInvariantViolation : public std::logic_error {
 public:
  explicit InternalInvariantViolation(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace conedual
