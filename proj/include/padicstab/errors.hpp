#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padicstab {

/// Raised when an operation's precondition is violated by the caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a value lies outside the domain an expression or map admits
/// (negative control functions, nonzero constant term in F, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an internal invariant fails at evaluation time.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Syntax error in the expression DSL, with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace padicstab
