#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gluedforms {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or scene text. `offset` is a byte offset into the
/// parsed text; scene errors additionally carry line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), message_(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }
  /// The diagnostic without the offset.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Exact and floating-point scalars met in one arithmetic operation.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// Pole or other failure while evaluating an expression at a point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A domain object failed one of its construction invariants.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A map was applied outside its domain of definition.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace gluedforms
