#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmpx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An iteration exhausted its application budget without meeting its
/// stopping condition.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::size_t applications)
      : Error(what), applications_(applications) {}

  /// Map applications spent before giving up.
  std::size_t applications() const noexcept { return applications_; }

 private:
  std::size_t applications_;
};

class EmptyList : public Error {
 public:
  using Error::Error;
};

class NoFiniteEntry : public Error {
 public:
  using Error::Error;
};

/// A system or state violates a structural invariant (ε in B, a row
/// without finite support, an infinite entry where a finite one is required).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidOrder : public Error {
 public:
  using Error::Error;
};

class NotSquare : public Error {
 public:
  using Error::Error;
};

class SymbolOutOfRange : public Error {
 public:
  using Error::Error;
};

class OrderMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A property guaranteed by construction failed at runtime. Indicates a bug,
/// never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text input; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mmpx
