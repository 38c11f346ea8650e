#pragma once

#include <stdexcept>
#include <string>

namespace replete {

// Failure categories. The CLI maps each one onto a process exit code.
enum class ErrorKind {
  Domain,      // violated precondition or malformed input
  Precision,   // precision cap reached before a decision could be made
  Budget,      // enumeration node budget or result cap exceeded
  Tolerance,   // a numerical check could not meet its tolerance
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& what) : Error(ErrorKind::Precision, what) {}
};
struct BudgetError : Error {
  explicit BudgetError(const std::string& what) : Error(ErrorKind::Budget, what) {}
};
struct ToleranceError : Error {
  explicit ToleranceError(const std::string& what) : Error(ErrorKind::Tolerance, what) {}
};
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace replete
