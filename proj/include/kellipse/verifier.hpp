#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kellipse/plan.hpp"
#include "kellipse/selfmap.hpp"

namespace kellipse {

/// Slack on floating-point inequality checks; exact checks use none.
inline constexpr double kConditionTolerance = 1e-9;
/// d(x, Tx) at or below this counts as a fixed point in floating point.
inline constexpr double kIdentityTolerance = 1e-9;

enum class ConditionId {
  Ek1,
  Ek2,
  Ek3,
  EPk1,
  EPk2,
  EPk3,
  EPPk2,
  EPPPk1,
  EPPPk2,
  EPPPk3,
  EPPPk4,
  Ik,
  Bk3,  // Banach-type variant of the pair condition: d(Tx,Ty) <= h d(x,y), h < 1
};

/// "Ek1", "E'k3", "E'''k4", "Ik", "Bk3".
std::string_view to_string(ConditionId id);
/// Inverse of to_string; also accepts "Epk3", "Epppk4" style names. Throws
/// ArgumentError for unknown names.
ConditionId parse_condition_id(std::string_view name);

enum class Verdict { Pass, Fail, Vacuous };

std::string_view to_string(Verdict verdict);

struct ConditionReport {
  ConditionId id{};
  Verdict verdict = Verdict::Vacuous;
  /// Minimal feasible constant for pair conditions and E''k2; may be +inf.
  std::optional<double> fitted_constant;
  /// Same constant in exact arithmetic (exact plans, finite values only).
  std::optional<Rational> exact_fitted;
  /// Largest violation (lhs - rhs) for inequality checks, or fitted - bound
  /// for fitted conditions. Positive means violated.
  double worst_margin = 0.0;
  /// Point or pair realising worst_margin.
  std::vector<Point> witness;
  std::vector<ExactPoint> exact_witness;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // zero-denominator pairs with a zero numerator
  bool exact = false;
  bool exhaustive = false;
  /// Ik only: samples that pass, and whether each of them is a fixed point.
  std::size_t passing = 0;
  std::optional<bool> consequence_holds;
};

/// psi(x) = x - r for x > 0 and psi(0) = 0.
struct AuxiliaryPsi {
  Rational r;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
};

/// Checks one condition for `map` and ellipse `e` over `plan`. Exact plans
/// are checked in rational arithmetic with zero slack.
ConditionReport check_condition(ConditionId id, const SelfMap& map, const KEllipse& e, const SamplePlan& plan);
ConditionReport check_condition(ConditionId id, const SelfMap& map, const KEllipse& e, const ExactPlan& plan);
ConditionReport check_condition(ConditionId id, const SelfMap& map, const KEllipse& e, const SampledPlan& plan);

/// d(x,Tx) <= (xi(x) - xi(Tx)) / (k + 1) at every sample, on and off the
/// ellipse.
ConditionReport check_Ik(const SelfMap& map, const SumField& field, std::size_t k, const SamplePlan& plan);

enum class Theorem { T1, T2, T3, T4 };

std::string_view to_string(Theorem theorem);
Theorem parse_theorem(std::string_view name);

struct TheoremVerdict {
  Theorem theorem{};
  std::vector<ConditionReport> existence;
  std::vector<ConditionReport> uniqueness;
  bool existence_certified = false;
  bool uniqueness_certified = false;
  /// Exhaustive plan with exact arithmetic.
  bool exact = false;

  /// "exact" or "on samples".
  std::string_view qualifier() const { return exact ? "exact" : "on samples"; }
};

/// Condition sets: T1 {Ek1, Ek2 | Ek3}, T2 {E'k1, E'k2 | E'k3},
/// T3 {Ek1, E''k2 | Ek3}, T4 {E'''k1, E'''k2, E'''k3 | E'''k4}.
/// Pass and Vacuous count as satisfied; uniqueness also needs existence.
TheoremVerdict certify(Theorem theorem, const SelfMap& map, const KEllipse& e, const SamplePlan& plan);

std::vector<ConditionId> existence_conditions(Theorem theorem);
std::vector<ConditionId> uniqueness_conditions(Theorem theorem);

/// Identity on the union of the ellipses, the constant `fallback` elsewhere.
/// ArgumentError if the fallback lies on one of them or outside the space.
SelfMap make_fixing_map(const std::vector<KEllipse>& ellipses, const ExactPoint& fallback);

/// Samples x with d(x, Tx) <= kIdentityTolerance (exactly zero for exact plans).
std::vector<Point> fixed_points_on(const SelfMap& map, const Metric& metric, const SampledPlan& plan);
std::vector<ExactPoint> fixed_points_on(const SelfMap& map, const Metric& metric, const ExactPlan& plan);

}  // namespace kellipse
