#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kellipse {

/// Bad input to an operation: dimension mismatch, out-of-range parameter,
/// point outside its space.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A self-map or scene that cannot be evaluated as configured.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scene or CSV text that does not parse.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of budget. Carries the best iterate found.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> best_point, double best_value)
      : std::runtime_error(what), best_point_(std::move(best_point)), best_value_(best_value) {}

  const std::vector<double>& best_point() const noexcept { return best_point_; }
  double best_value() const noexcept { return best_value_; }

 private:
  std::vector<double> best_point_;
  double best_value_;
};

}  // namespace kellipse
