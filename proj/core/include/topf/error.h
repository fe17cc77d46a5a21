#pragma once

#include <stdexcept>
#include <string>

namespace topf {

// Base class for every error the library raises. Callers that only need a
// diagnostic can catch this; the subclasses exist for tests and for the CLI
// to map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed token in a text input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Raised when a construction would exceed a configured size limit.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// Input is geometrically degenerate (e.g. collinear points for a 2D
// triangulation, duplicated points for the alpha complex).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, double gradient_residual,
              double curl_residual)
      : Error(what),
        gradient_residual_(gradient_residual),
        curl_residual_(curl_residual) {}
  double gradient_residual() const { return gradient_residual_; }
  double curl_residual() const { return curl_residual_; }

 private:
  double gradient_residual_;
  double curl_residual_;
};

// An internal invariant was violated. Always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace topf
