#pragma once

#include <string>
#include <variant>
#include <vector>

#include "kellipse/interval.hpp"
#include "kellipse/kellipse.hpp"

namespace kellipse {

// Regions: where a rule applies.

/// Points of a k-ellipse: exact level test for exact points, |xi - r| <= tol
/// for floating-point ones.
struct OnEllipseRegion {
  KEllipse ellipse;
  double tol = 1e-6;
};

struct FiniteSetRegion {
  std::vector<ExactPoint> points;
};

/// One-dimensional interval predicate.
struct IntervalRegion {
  Interval interval;
};

/// normal . x <= offset (or < when strict).
struct HalfSpaceRegion {
  std::vector<Rational> normal;
  Rational offset;
  bool strict = false;
};

struct OtherwiseRegion {};

using Region = std::variant<OnEllipseRegion, FiniteSetRegion, IntervalRegion, HalfSpaceRegion, OtherwiseRegion>;

// Actions: what a rule does.

struct IdentityAction {};

struct ConstantAction {
  ExactPoint value;
};

/// x -> slope * x + intercept on the real line.
struct AffineAction {
  Rational slope;
  Rational intercept;
};

/// x -> (a x + b) / (c x + d) on the real line. The pole c x + d = 0 is
/// guarded: evaluating there is a configuration error.
struct MobiusAction {
  Rational a, b, c, d;
};

using Action = std::variant<IdentityAction, ConstantAction, AffineAction, MobiusAction>;

struct Rule {
  Region region;
  Action action;
};

/// A self-map given by an ordered rule table; the first matching rule wins.
class SelfMap {
 public:
  SelfMap() = default;
  explicit SelfMap(std::vector<Rule> rules) : rules_(std::move(rules)) {}

  static SelfMap identity() { return SelfMap({{OtherwiseRegion{}, IdentityAction{}}}); }
  static SelfMap constant(ExactPoint value) { return SelfMap({{OtherwiseRegion{}, ConstantAction{std::move(value)}}}); }

  const std::vector<Rule>& rules() const noexcept { return rules_; }

  /// Whether the final rule is the catch-all, which makes evaluation total.
  bool total() const noexcept;

  /// Index of the first rule whose region contains x, or -1.
  long matching_rule(const Point& x) const;
  long matching_rule(const ExactPoint& x) const;

  /// ConfigurationError when no rule matches or a guard is violated.
  Point operator()(const Point& x) const;
  ExactPoint operator()(const ExactPoint& x) const;

  std::string describe() const;

 private:
  std::vector<Rule> rules_;
};

Point evaluate(const SelfMap& map, const Point& x);
ExactPoint evaluate(const SelfMap& map, const ExactPoint& x);

}  // namespace kellipse
