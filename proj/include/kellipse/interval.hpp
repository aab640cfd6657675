#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kellipse/rational.hpp"

namespace kellipse {

/// Interval on the real line with rational endpoints. A missing bound is
/// infinite; infinite ends are always open.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
  static Interval point(const Rational& a) { return closed(a, a); }
  static Interval whole_line() { return {std::nullopt, std::nullopt, false, false}; }

  bool contains(const Rational& x) const;
  bool contains(double x) const;
  bool empty() const;
  bool is_point() const { return lo && hi && *lo == *hi && !empty(); }
  /// Whether every point of `other` lies in this interval.
  bool contains(const Interval& other) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intersection of two intervals (possibly empty).
Interval intersect(const Interval& a, const Interval& b);

/// Normalises a union of intervals: drops empties, sorts, merges pieces that
/// overlap or touch at an included endpoint.
std::vector<Interval> merge_intervals(std::vector<Interval> parts);

/// Pairwise intersection of two normalised unions.
std::vector<Interval> intersect_unions(const std::vector<Interval>& a, const std::vector<Interval>& b);

/// "[-6, 6]", "(2, +inf)", "{4}".
std::string to_string(const Interval& interval);
std::string to_string(const std::vector<Interval>& intervals);

}  // namespace kellipse
