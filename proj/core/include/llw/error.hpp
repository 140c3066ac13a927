#pragma once

#include <stdexcept>
#include <string>

namespace llw {

/// Misuse of an operation: wrong carrier, web mismatch, non-member input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction produced something that violates its own invariants,
/// e.g. an undefined entry while composing verified morphisms.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The request is well-formed but outside what can be computed exactly
/// (size bounds, unsupported presentation combinations).
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : std::runtime_error(format(message, line, column)), message_(std::move(message)), line_(line), column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& m, std::size_t l, std::size_t c) {
    return std::to_string(l) + ":" + std::to_string(c) + ": " + m;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace llw
