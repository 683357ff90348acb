#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcim {

// Error categories. The numeric values are shared with the C API status codes.
enum class ErrorKind : int {
  kInvalidArgument = 2,
  kContractViolation = 3,
  kIo = 4,
  kParse = 5,
  kLimitExceeded = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A parameter outside its documented domain (p not in [0,1], epsilon <= 0, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::kInvalidArgument, what) {}
};

/// A caller broke an operation precondition (overlapping seed sets, k too large, ...).
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error(ErrorKind::kContractViolation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Exhaustive oracles refuse inputs beyond their enumeration guard.
class LimitExceeded : public Error {
 public:
  explicit LimitExceeded(const std::string& what) : Error(ErrorKind::kLimitExceeded, what) {}
};

}  // namespace tcim
