#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyq {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A regular matrix was required.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// The input violates a documented precondition (empty polyhedron where a
/// nonempty one is required, nonpointed input, unsupported shape, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configurable enumeration or row-count cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data contradicts the contract of the operation.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace polyq
