#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trellis_lab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on an input that violates its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed trellis text; carries the 1-based line number (0 if unknown).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A bounded search (isomorphism, enumeration) was abandoned above its cap.
class UndecidedError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace trellis_lab
