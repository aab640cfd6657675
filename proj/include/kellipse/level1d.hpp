#pragma once

#include <variant>
#include <vector>

#include "kellipse/interval.hpp"
#include "kellipse/rational.hpp"

namespace kellipse {

/// Exact solution set of sum_i |x - x_i| = r on the real line.
struct LevelSolution1D {
  struct Empty {};
  struct Points {
    std::vector<Rational> values;  // one or two, ascending
  };
  struct Segment {
    Rational lo, hi;
  };
  std::variant<Empty, Points, Segment> value;

  bool empty() const { return std::holds_alternative<Empty>(value); }
  /// The solution set as a union of intervals (points become degenerate ones).
  std::vector<Interval> as_intervals() const;
};

std::string to_string(const LevelSolution1D& solution);

/// Minimum of sum_i |x - x_i| and the set where it is attained.
struct Minimum1D {
  Rational value;
  Rational lo, hi;  // lo == hi unless k is even with distinct middle foci
};

Minimum1D minimum_1d(std::vector<Rational> foci);

/// Piecewise-linear exact solve. Empty below the minimum; the minimising
/// segment at the minimum when it has positive length; otherwise one or two
/// points.
LevelSolution1D solve_1d(std::vector<Rational> foci, const Rational& r);

/// sum_i |x - x_i|.
Rational sum_abs(const std::vector<Rational>& foci, const Rational& x);

}  // namespace kellipse
