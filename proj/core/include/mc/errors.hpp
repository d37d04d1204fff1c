#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, or 0 when not tied to a line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An enumeration or search would exceed a configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A word is not a codeword, or its precision is undefined.
class CodeError : public Error {
 public:
  using Error::Error;
};

/// A circuit failed structural validation.
class InvalidCircuit : public Error {
 public:
  using Error::Error;
};

/// Operation preconditions that depend on the argument's content (widths,
/// arities, register types) rather than on malformed text.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace mc
