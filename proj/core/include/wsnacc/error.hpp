#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsnacc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Sample window with zero variance, so correlation is undefined.
class DegenerateWindowError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Factorization failed even after the jitter budget was spent.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A property a scenario asserts about its own output did not hold.
class CheckFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; column 0 means
/// the whole line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &source, std::size_t line, std::size_t column,
             const std::string &message)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace wsnacc
