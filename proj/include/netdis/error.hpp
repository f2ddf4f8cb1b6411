#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netdis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list input. Carries the 1-based line number (0 when the
/// error is not tied to a line, e.g. empty input).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Precondition violation on an argument (bad id, infeasible parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: eigensolver non-convergence or degenerate baseline.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : NumericalError(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Γ(G) − Γ(G̃) vanishes, so the disintegration effect is undefined.
class DegenerateBaselineError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Experiment configuration could not be read or is inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace netdis
