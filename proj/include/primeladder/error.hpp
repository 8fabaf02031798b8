#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace primeladder {

enum class ErrorKind {
  invalid_argument,
  coverage_exceeded,
  malformed_labeling,
  invalid_label,
  construction_failed,
  unsupported_order,
  witness_not_found,
  checkpoint_error,
  parse_error,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::coverage_exceeded: return "coverage-exceeded";
    case ErrorKind::malformed_labeling: return "malformed-labeling";
    case ErrorKind::invalid_label: return "invalid-label";
    case ErrorKind::construction_failed: return "construction-failed";
    case ErrorKind::unsupported_order: return "unsupported-order";
    case ErrorKind::witness_not_found: return "witness-not-found";
    case ErrorKind::checkpoint_error: return "checkpoint-error";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorKind::parse_error,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace primeladder
