#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rfsep {

/// Base of every domain error raised by the library. The CLI maps these to
/// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on arity or characteristic.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed. Line and column are 1-based; 0 means
/// unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return "parse error: " + what;
    return "parse error at " + std::to_string(line) + ":" +
           std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Parsed input is well formed but semantically invalid (inverse check
/// failure, undeclared denominator, non-invertible automorphism rule...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A proven bound or identity failed to hold. Indicates a bug or a
/// mis-specified input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// No conjugator was found within the configured search radius.
class MalabelianViolation : public Error {
 public:
  using Error::Error;
};

/// A denominator specializes to zero in the target field.
class DenominatorCollapse : public Error {
 public:
  using Error::Error;
};

/// An element budget, enumeration budget or size guard was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The catalog holds no quotient separating the element.
class NotSeparated : public Error {
 public:
  using Error::Error;
};

/// The automorphism orbit of a kernel grew past the configured cap.
class OrbitUnbounded : public Error {
 public:
  using Error::Error;
};

/// Should be unreachable; signals an arithmetic or logic bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rfsep
