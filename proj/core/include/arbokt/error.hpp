#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arbokt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different rings (or modules of different rank).
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input. `line` and `column` are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0 && column == 0) return what;
    return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }
  std::size_t line_;
  std::size_t column_;
};

/// Structurally valid input that violates a documented precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold by construction failed.
class InternalFault : public Error {
 public:
  using Error::Error;
};

}  // namespace arbokt
