#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metrecon {

// Base class for data errors: malformed input, violated pipeline invariants.
// Bad parameter values are reported with std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Raised when an intermediate structure breaks an invariant the next stage
// relies on (uncovered d-value, nerve edge between identical intervals, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace metrecon
