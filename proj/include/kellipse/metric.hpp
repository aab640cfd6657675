#pragma once

#include <string>

#include "kellipse/point.hpp"

namespace kellipse {

enum class MetricKind { L1, L2, Linf, Lp };

/// A Minkowski metric on R^n. Lp exponents are restricted to [1, 64].
class Metric {
 public:
  static constexpr double kMinExponent = 1.0;
  static constexpr double kMaxExponent = 64.0;

  static Metric l1() { return Metric(MetricKind::L1, 1.0); }
  static Metric l2() { return Metric(MetricKind::L2, 2.0); }
  static Metric linf() { return Metric(MetricKind::Linf, 0.0); }
  static Metric lp(double p);

  MetricKind kind() const noexcept { return kind_; }
  /// Exponent for Lp (1 for L1, 2 for L2); meaningless for Linf.
  double exponent() const noexcept { return p_; }

  double distance(const Point& a, const Point& b) const;

  /// Exact distance. Available for L1 and Linf in any dimension, and for
  /// every kind in dimension 1 where all of them reduce to |a - b|.
  Rational distance(const ExactPoint& a, const ExactPoint& b) const;

  bool exact_in(std::size_t dimension) const noexcept {
    return dimension == 1 || kind_ == MetricKind::L1 || kind_ == MetricKind::Linf;
  }

  std::string name() const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  Metric(MetricKind kind, double p) : kind_(kind), p_(p) {}

  MetricKind kind_;
  double p_;
};

}  // namespace kellipse
