#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zol {

// Invalid input to an operation (bad element, empty centers, mismatched
// vocabularies, malformed vertex id, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed structure or patch file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Unbound variable or a formula that does not fit the structure's vocabulary.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input exceeds the size an exhaustive routine accepts.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bounded search ran out of budget before finding a witness.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iteration did not converge within its step cap.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zol
