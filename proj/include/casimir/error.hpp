#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casimir {

/// Base of every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed dielectric table. `line()` is 1-based, 0 when the whole stream is at fault.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Tabulated data cannot be extended below its first point with positive Drude-like slope.
class ExtrapolationError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best value reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_value, double error_estimate)
      : Error(what), best_value_(best_value), error_estimate_(error_estimate) {}
  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_value_;
  double error_estimate_;
};

}  // namespace casimir
