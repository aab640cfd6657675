#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "kellipse/interval.hpp"
#include "kellipse/metric.hpp"
#include "kellipse/point.hpp"

namespace kellipse {

/// Restricts a one-dimensional continuum to a union of intervals and points,
/// e.g. {-2, -1} U [0, inf).
class Membership {
 public:
  Membership() = default;
  explicit Membership(std::vector<Interval> parts) : parts_(merge_intervals(std::move(parts))) {}

  bool contains(const Rational& x) const;
  bool contains(double x) const;
  const std::vector<Interval>& parts() const noexcept { return parts_; }

 private:
  std::vector<Interval> parts_;
};

struct Continuum {
  std::size_t dimension;
  Metric metric;
  /// Only for dimension 1; absent means the whole of R^n.
  std::optional<Membership> membership;
};

struct FiniteSet {
  std::vector<ExactPoint> points;
  Metric metric;
};

/// The ambient metric space. Finite spaces hold exact points, deduplicated
/// at construction in first-occurrence order.
class Space {
 public:
  static Space continuum(std::size_t dimension, Metric metric);
  static Space mixed(Metric metric, Membership membership);
  static Space finite(std::vector<ExactPoint> points, Metric metric);

  std::size_t dimension() const noexcept;
  const Metric& metric() const noexcept;
  bool is_finite() const noexcept { return std::holds_alternative<FiniteSet>(data_); }
  bool is_mixed() const noexcept;
  /// Whether distances between members can be computed exactly.
  bool exact() const noexcept { return metric().exact_in(dimension()); }

  /// Throws unless `is_finite()`.
  const std::vector<ExactPoint>& points() const;
  const Continuum* as_continuum() const noexcept { return std::get_if<Continuum>(&data_); }

  bool contains(const Point& p) const;
  bool contains(const ExactPoint& p) const;

  /// ArgumentError on dimension mismatch or non-membership.
  template <class P>
  void require_member(const P& p) const {
    require_same_dimension(p.dimension(), dimension());
    if (!contains(p)) {
      throw ArgumentError("point " + to_string(p) + " is not in the space");
    }
  }

 private:
  explicit Space(std::variant<Continuum, FiniteSet> data) : data_(std::move(data)) {}

  std::variant<Continuum, FiniteSet> data_;
};

}  // namespace kellipse
