#ifndef LVFOL_ERROR_HPP
#define LVFOL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lvfol {

enum class ErrorKind {
  math,     // mathematical rejection: division by zero, invariant violation
  domain,   // argument shape mismatch (nvars, arity, degree)
  parse,    // malformed text input
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class MathError : public Error {
 public:
  explicit MathError(const std::string& what) : Error(ErrorKind::math, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::domain, what) {}
};

/// Syntax error with a 1-based line/column position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::parse, std::to_string(line) + ":" +
                                    std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace lvfol

#endif  // LVFOL_ERROR_HPP
