#pragma once

#include <stdexcept>
#include <string>

namespace pgap {

/// Base class for every error thrown by the library. The CLI maps the
/// concrete subclasses onto process exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (Pauli strings, JSON documents).
struct ParseError : Error {
  using Error::Error;
};

/// Operands disagree on qubit count or vector dimension.
struct DimensionError : Error {
  using Error::Error;
};

/// An operation would exceed the configured term-count or dense-size limit.
struct CapacityError : Error {
  using Error::Error;
};

/// A documented precondition does not hold (norm bounds, zero operators, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// Internal consistency check failed; indicates a bug in the algebra.
struct AlgebraError : Error {
  using Error::Error;
};

}  // namespace pgap
