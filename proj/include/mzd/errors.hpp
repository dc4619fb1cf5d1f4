#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mzd {

// Caller broke a precondition (mismatched variable orders, bad bound, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation undefined on this input, e.g. the main variable of a constant.
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input outside the supported fragment (multivariate where univariate is needed).
class UnsupportedInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotZeroDimensionalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dual-space dimensions did not stabilize below the cap.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mzd
