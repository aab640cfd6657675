#include "kellipse/verifier.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>

#include "kellipse/parallel.hpp"

namespace kellipse {

namespace {

constexpr std::array<std::string_view, 13> kConditionNames = {
    "Ek1", "Ek2", "Ek3", "E'k1", "E'k2", "E'k3", "E''k2", "E'''k1", "E'''k2", "E'''k3", "E'''k4", "Ik", "Bk3"};

std::string normalise_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == 'p' || c == 'P') {
      out += '\'';
    } else if (c != '_' && c != ' ') {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

template <class S>
struct Num;

template <>
struct Num<Rational> {
  static constexpr bool exact = true;
  static bool violated(const Rational& v) { return v > 0; }
  static bool zero(const Rational& v) { return v == 0; }
  static double to_d(const Rational& v) { return to_double(v); }
  static Rational radius(const KEllipse& e) { return e.exact_radius(); }
  static Rational from(const Rational& v) { return v; }
};

template <>
struct Num<double> {
  static constexpr bool exact = false;
  static bool violated(double v) { return v > kConditionTolerance; }
  static bool zero(double v) { return v <= kConditionTolerance; }
  static double to_d(double v) { return v; }
  static double radius(const KEllipse& e) { return e.radius(); }
  static double from(const Rational& v) { return to_double(v); }
};

template <class S>
using Witness = std::vector<BasicPoint<S>>;

/// Running maximum of a margin, ties broken towards the lexicographically
/// greatest witness so the result is independent of visiting order.
template <class S>
struct Worst {
  bool set = false;
  S margin{};
  Witness<S> witness;

  void offer(const S& m, Witness<S> w) {
    if (!set || m > margin || (m == margin && w > witness)) {
      set = true;
      margin = m;
      witness = std::move(w);
    }
  }
  void merge(Worst&& other) {
    if (other.set) offer(other.margin, std::move(other.witness));
  }
};

/// Running supremum of lhs / rhs over pairs.
template <class S>
struct Fit {
  bool set = false;
  bool infinite = false;
  S ratio{};
  Witness<S> witness;
  std::size_t checked = 0;
  std::size_t skipped = 0;

  void offer(const S& lhs, const S& rhs, Witness<S> w) {
    ++checked;
    if (Num<S>::zero(rhs)) {
      if (!Num<S>::violated(lhs)) {
        ++skipped;
        return;
      }
      if (!infinite || w > witness) {
        infinite = true;
        set = true;
        witness = std::move(w);
      }
      return;
    }
    if (infinite) return;
    S r = lhs / rhs;
    if (!set || r > ratio || (r == ratio && w > witness)) {
      set = true;
      ratio = std::move(r);
      witness = std::move(w);
    }
  }
  void merge(Fit&& other) {
    checked += other.checked;
    skipped += other.skipped;
    if (!other.set) return;
    if (other.infinite) {
      if (!infinite || other.witness > witness) witness = std::move(other.witness);
      infinite = set = true;
      return;
    }
    if (infinite) return;
    if (!set || other.ratio > ratio || (other.ratio == ratio && other.witness > witness)) {
      set = true;
      ratio = std::move(other.ratio);
      witness = std::move(other.witness);
    }
  }
};

template <class S>
void fill_witness(ConditionReport& report, const Witness<S>& w) {
  if constexpr (Num<S>::exact) {
    report.exact_witness = w;
    for (const auto& p : w) report.witness.push_back(to_double(p));
  } else {
    report.witness = w;
  }
}

/// Map images, checked to stay in the space.
template <class S>
std::vector<BasicPoint<S>> images(const SelfMap& map, const Space& space, const std::vector<BasicPoint<S>>& xs) {
  std::vector<BasicPoint<S>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    BasicPoint<S> y = map(x);
    if (y.dimension() != space.dimension() || !space.contains(y)) {
      throw ConfigurationError("map sends " + to_string(x) + " to " + to_string(y) + ", outside the space");
    }
    out.push_back(std::move(y));
  }
  return out;
}

/// Pair loop over on x others; parallel in floating point, sequential in
/// exact arithmetic. `Acc` must merge deterministically.
template <class S, class Acc, class Body>
Acc reduce_pairs(std::size_t n_outer, Body&& body) {
  const std::size_t workers = Num<S>::exact ? 1 : std::min<std::size_t>(worker_count(), std::max<std::size_t>(n_outer, 1));
  std::vector<Acc> partial(workers);
  const std::size_t chunk = (n_outer + workers - 1) / std::max<std::size_t>(workers, 1);
  parallel_for(n_outer, workers, [&](std::size_t begin, std::size_t end) {
    Acc& acc = partial[chunk ? begin / chunk : 0];
    for (std::size_t i = begin; i < end; ++i) body(i, acc);
  });
  Acc total;
  for (auto& p : partial) total.merge(std::move(p));
  return total;
}

template <class S>
struct Context {
  const SelfMap& map;
  const KEllipse& e;
  const BasicSamplePlan<S>& plan;
  const Metric& metric;
  S r;
  std::vector<BasicPoint<S>> t_on, t_off;

  Context(const SelfMap& m, const KEllipse& ell, const BasicSamplePlan<S>& p)
      : map(m), e(ell), plan(p), metric(ell.space().metric()), r(Num<S>::radius(ell)) {}

  S d(const BasicPoint<S>& a, const BasicPoint<S>& b) const { return metric.distance(a, b); }
  S xi(const BasicPoint<S>& x) const { return e.field()(x); }
};

template <class S>
ConditionReport base_report(ConditionId id, const BasicSamplePlan<S>& plan) {
  ConditionReport report;
  report.id = id;
  report.exact = Num<S>::exact;
  report.exhaustive = plan.exhaustive();
  return report;
}

/// Pointwise check over on-ellipse samples: violation(i) = lhs - rhs.
template <class S, class Violation>
ConditionReport pointwise(ConditionId id, const Context<S>& ctx, Violation&& violation) {
  ConditionReport report = base_report(id, ctx.plan);
  Worst<S> worst;
  for (std::size_t i = 0; i < ctx.plan.on_ellipse.size(); ++i) {
    worst.offer(violation(i), {ctx.plan.on_ellipse[i]});
  }
  report.checked = ctx.plan.on_ellipse.size();
  if (!worst.set) return report;
  report.worst_margin = Num<S>::to_d(worst.margin);
  report.verdict = Num<S>::violated(worst.margin) ? Verdict::Fail : Verdict::Pass;
  fill_witness(report, worst.witness);
  return report;
}

/// Fits the least h with lhs <= h * rhs over on x off pairs; passes when
/// the fit lies strictly below `bound`.
template <class S, class Sides>
ConditionReport fitted_pairs(ConditionId id, const Context<S>& ctx, const Rational& bound, Sides&& sides) {
  ConditionReport report = base_report(id, ctx.plan);
  const auto& on = ctx.plan.on_ellipse;
  const auto& off = ctx.plan.off_ellipse;
  Fit<S> fit = reduce_pairs<S, Fit<S>>(on.size(), [&](std::size_t i, Fit<S>& acc) {
    for (std::size_t j = 0; j < off.size(); ++j) {
      auto [lhs, rhs] = sides(i, j);
      acc.offer(lhs, rhs, {on[i], off[j]});
    }
  });
  report.checked = fit.checked;
  report.skipped = fit.skipped;
  if (fit.checked == 0) return report;
  if (!fit.set) {
    // Every pair was 0 <= h * 0.
    report.fitted_constant = 0.0;
    if constexpr (Num<S>::exact) report.exact_fitted = Rational(0);
    report.worst_margin = -to_double(bound);
    report.verdict = Verdict::Pass;
    return report;
  }
  fill_witness(report, fit.witness);
  if (fit.infinite) {
    report.fitted_constant = std::numeric_limits<double>::infinity();
    report.worst_margin = std::numeric_limits<double>::infinity();
    report.verdict = Verdict::Fail;
    return report;
  }
  report.fitted_constant = Num<S>::to_d(fit.ratio);
  bool pass;
  if constexpr (Num<S>::exact) {
    report.exact_fitted = fit.ratio;
    report.worst_margin = to_double(fit.ratio - bound);
    pass = fit.ratio < bound;
  } else {
    report.worst_margin = fit.ratio - to_double(bound);
    pass = fit.ratio < to_double(bound) - kConditionTolerance;
  }
  report.verdict = pass ? Verdict::Pass : Verdict::Fail;
  return report;
}

template <class S>
ConditionReport check_mu(const Context<S>& ctx) {
  // mu d(x,Tx) + xi(Tx) >= r; least mu per sample, clamped at zero.
  ConditionReport report = base_report(ConditionId::EPPk2, ctx.plan);
  const auto& on = ctx.plan.on_ellipse;
  Fit<S> fit;
  for (std::size_t i = 0; i < on.size(); ++i) {
    S need = ctx.r - ctx.xi(ctx.t_on[i]);
    if (need < S(0)) need = S(0);
    fit.offer(need, ctx.d(on[i], ctx.t_on[i]), {on[i]});
  }
  report.checked = fit.checked;
  report.skipped = fit.skipped;
  if (fit.checked == 0) return report;
  if (!fit.set) {
    report.fitted_constant = 0.0;
    if constexpr (Num<S>::exact) report.exact_fitted = Rational(0);
    report.worst_margin = -1.0;
    report.verdict = Verdict::Pass;
    return report;
  }
  fill_witness(report, fit.witness);
  if (fit.infinite) {
    report.fitted_constant = report.worst_margin = std::numeric_limits<double>::infinity();
    report.verdict = Verdict::Fail;
    return report;
  }
  report.fitted_constant = Num<S>::to_d(fit.ratio);
  report.worst_margin = Num<S>::to_d(fit.ratio) - 1.0;
  bool pass;
  if constexpr (Num<S>::exact) {
    report.exact_fitted = fit.ratio;
    pass = fit.ratio < 1;
  } else {
    pass = fit.ratio < 1.0 - kConditionTolerance;
  }
  report.verdict = pass ? Verdict::Pass : Verdict::Fail;
  return report;
}

template <class S>
ConditionReport check_distinct_images(const Context<S>& ctx) {
  // d(Tx,Ty) > r over distinct on-ellipse pairs.
  ConditionReport report = base_report(ConditionId::EPPPk2, ctx.plan);
  const auto& on = ctx.plan.on_ellipse;
  Worst<S> worst = reduce_pairs<S, Worst<S>>(on.size(), [&](std::size_t i, Worst<S>& acc) {
    for (std::size_t j = 0; j < on.size(); ++j) {
      if (i == j) continue;
      acc.offer(ctx.r - ctx.d(ctx.t_on[i], ctx.t_on[j]), {on[i], on[j]});
    }
  });
  report.checked = on.size() < 2 ? 0 : on.size() * (on.size() - 1);
  if (!worst.set) return report;
  fill_witness(report, worst.witness);
  report.worst_margin = Num<S>::to_d(worst.margin);
  bool fail;
  if constexpr (Num<S>::exact) {
    fail = worst.margin >= 0;
  } else {
    fail = worst.margin > kConditionTolerance;
  }
  report.verdict = fail ? Verdict::Fail : Verdict::Pass;
  return report;
}

template <class S>
ConditionReport check_psi(const Context<S>& ctx) {
  // d(Tx,Ty) <= d(x,y) - psi(d(x,Tx)) over all on-ellipse pairs.
  ConditionReport report = base_report(ConditionId::EPPPk3, ctx.plan);
  const AuxiliaryPsi psi{ctx.e.exact_radius()};
  const auto& on = ctx.plan.on_ellipse;
  Worst<S> worst = reduce_pairs<S, Worst<S>>(on.size(), [&](std::size_t i, Worst<S>& acc) {
    const S psi_x = psi(ctx.d(on[i], ctx.t_on[i]));
    for (std::size_t j = 0; j < on.size(); ++j) {
      acc.offer(ctx.d(ctx.t_on[i], ctx.t_on[j]) - (ctx.d(on[i], on[j]) - psi_x), {on[i], on[j]});
    }
  });
  report.checked = on.size() * on.size();
  if (!worst.set) return report;
  fill_witness(report, worst.witness);
  report.worst_margin = Num<S>::to_d(worst.margin);
  report.verdict = Num<S>::violated(worst.margin) ? Verdict::Fail : Verdict::Pass;
  return report;
}

template <class S>
ConditionReport check_identity_condition(const SelfMap& map, const SumField& field, std::size_t k,
                                         const BasicSamplePlan<S>& plan) {
  ConditionReport report = base_report(ConditionId::Ik, plan);
  const Metric& metric = field.space().metric();
  std::vector<BasicPoint<S>> xs = plan.on_ellipse;
  xs.insert(xs.end(), plan.off_ellipse.begin(), plan.off_ellipse.end());
  const auto ts = images(map, field.space(), xs);
  const S k1 = S(static_cast<long long>(k + 1));
  Worst<S> worst;
  bool consequence = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const S moved = metric.distance(xs[i], ts[i]);
    const S violation = moved - (field(xs[i]) - field(ts[i])) / k1;
    worst.offer(violation, {xs[i]});
    if (!Num<S>::violated(violation)) {
      ++report.passing;
      const bool fixed = Num<S>::exact ? Num<S>::to_d(moved) == 0.0 : Num<S>::to_d(moved) <= kIdentityTolerance;
      consequence = consequence && fixed;
    }
  }
  report.checked = xs.size();
  report.consequence_holds = consequence;
  if (!worst.set) return report;
  fill_witness(report, worst.witness);
  report.worst_margin = Num<S>::to_d(worst.margin);
  report.verdict = Num<S>::violated(worst.margin) ? Verdict::Fail : Verdict::Pass;
  return report;
}

template <class S>
ConditionReport check_impl(ConditionId id, const SelfMap& map, const KEllipse& e, const BasicSamplePlan<S>& plan) {
  if (id == ConditionId::Ik) return check_identity_condition(map, e.field(), e.k(), plan);
  Context<S> ctx(map, e, plan);
  ctx.t_on = images(map, e.space(), plan.on_ellipse);
  const auto& on = plan.on_ellipse;
  const auto& t_on = ctx.t_on;
  const auto& r = ctx.r;
  const bool pairs = id == ConditionId::Ek3 || id == ConditionId::EPk3 || id == ConditionId::EPPPk4 ||
                     id == ConditionId::Bk3;
  if (pairs) ctx.t_off = images(map, e.space(), plan.off_ellipse);
  const auto& off = plan.off_ellipse;
  const auto& t_off = ctx.t_off;

  switch (id) {
    case ConditionId::Ek1:
      return pointwise(id, ctx, [&](std::size_t i) -> S { return ctx.d(on[i], t_on[i]) - (ctx.xi(on[i]) - ctx.xi(t_on[i])); });
    case ConditionId::Ek2:
      return pointwise(id, ctx, [&](std::size_t i) -> S { return r - ctx.xi(t_on[i]); });
    case ConditionId::EPk1:
      return pointwise(id, ctx, [&](std::size_t i) -> S {
        return ctx.d(on[i], t_on[i]) - (ctx.xi(on[i]) + ctx.xi(t_on[i]) - r - r);
      });
    case ConditionId::EPk2:
      return pointwise(id, ctx, [&](std::size_t i) -> S { return ctx.xi(t_on[i]) - r; });
    case ConditionId::EPPPk1:
      return pointwise(id, ctx, [&](std::size_t i) -> S {
        S v = ctx.xi(t_on[i]) - r;
        return v < S(0) ? S(-v) : v;
      });
    case ConditionId::EPPk2:
      return check_mu(ctx);
    case ConditionId::EPPPk2:
      return check_distinct_images(ctx);
    case ConditionId::EPPPk3:
      return check_psi(ctx);
    case ConditionId::Ek3:
      return fitted_pairs(id, ctx, Rational(1, 2), [&](std::size_t i, std::size_t j) {
        return std::pair<S, S>{ctx.d(t_on[i], t_off[j]), ctx.d(t_on[i], on[i]) + ctx.d(t_off[j], off[j])};
      });
    case ConditionId::EPk3:
      return fitted_pairs(id, ctx, Rational(1, 2), [&](std::size_t i, std::size_t j) {
        return std::pair<S, S>{ctx.d(t_on[i], t_off[j]), ctx.d(t_on[i], off[j]) + ctx.d(t_off[j], on[i])};
      });
    case ConditionId::EPPPk4:
      return fitted_pairs(id, ctx, Rational(1), [&](std::size_t i, std::size_t j) {
        const auto& x = on[i];
        const auto& y = off[j];
        S m = std::max({ctx.d(x, t_on[i]), ctx.d(y, t_off[j]), ctx.d(x, t_off[j]), ctx.d(y, t_on[i]), ctx.d(x, y)});
        return std::pair<S, S>{ctx.d(t_on[i], t_off[j]), std::move(m)};
      });
    case ConditionId::Bk3:
      return fitted_pairs(id, ctx, Rational(1), [&](std::size_t i, std::size_t j) {
        return std::pair<S, S>{ctx.d(t_on[i], t_off[j]), ctx.d(on[i], off[j])};
      });
    case ConditionId::Ik:
      break;
  }
  throw ArgumentError("unknown condition");
}

template <class S>
std::vector<BasicPoint<S>> fixed_points_impl(const SelfMap& map, const Metric& metric, const BasicSamplePlan<S>& plan) {
  std::vector<BasicPoint<S>> out;
  for (const auto* part : {&plan.on_ellipse, &plan.off_ellipse}) {
    for (const auto& x : *part) {
      const S moved = metric.distance(x, map(x));
      if constexpr (Num<S>::exact) {
        if (moved == 0) out.push_back(x);
      } else {
        if (moved <= kIdentityTolerance) out.push_back(x);
      }
    }
  }
  return out;
}

bool satisfied(const ConditionReport& report) { return report.verdict != Verdict::Fail; }

}  // namespace

std::string_view to_string(ConditionId id) { return kConditionNames[static_cast<std::size_t>(id)]; }

ConditionId parse_condition_id(std::string_view name) {
  const std::string wanted = normalise_name(name);
  for (std::size_t i = 0; i < kConditionNames.size(); ++i) {
    if (normalise_name(kConditionNames[i]) == wanted) return static_cast<ConditionId>(i);
  }
  throw ArgumentError("unknown condition '" + std::string(name) + "'");
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return "Pass";
    case Verdict::Fail:
      return "Fail";
    case Verdict::Vacuous:
      return "Vacuous";
  }
  return "?";
}

Rational AuxiliaryPsi::operator()(const Rational& x) const {
  if (x < 0) throw ArgumentError("psi is defined on [0, inf)");
  return x > 0 ? Rational(x - r) : Rational(0);
}

double AuxiliaryPsi::operator()(double x) const {
  if (x < 0) throw ArgumentError("psi is defined on [0, inf)");
  return x > 0 ? x - to_double(r) : 0.0;
}

ConditionReport check_condition(ConditionId id, const SelfMap& map, const KEllipse& e, const ExactPlan& plan) {
  if (!e.space().exact()) throw ArgumentError("exact plans need a metric that is exact in this dimension");
  return check_impl(id, map, e, plan);
}

ConditionReport check_condition(ConditionId id, const SelfMap& map, const KEllipse& e, const SampledPlan& plan) {
  return check_impl(id, map, e, plan);
}

ConditionReport check_condition(ConditionId id, const SelfMap& map, const KEllipse& e, const SamplePlan& plan) {
  return std::visit([&](const auto& p) { return check_condition(id, map, e, p); }, plan);
}

ConditionReport check_Ik(const SelfMap& map, const SumField& field, std::size_t k, const SamplePlan& plan) {
  if (k != field.k()) throw ArgumentError("k must equal the number of foci");
  return std::visit([&](const auto& p) { return check_identity_condition(map, field, k, p); }, plan);
}

std::string_view to_string(Theorem theorem) {
  static constexpr std::array<std::string_view, 4> names = {"T1", "T2", "T3", "T4"};
  return names[static_cast<std::size_t>(theorem)];
}

Theorem parse_theorem(std::string_view name) {
  const std::string n = normalise_name(name);
  if (n == "t1") return Theorem::T1;
  if (n == "t2") return Theorem::T2;
  if (n == "t3") return Theorem::T3;
  if (n == "t4") return Theorem::T4;
  throw ArgumentError("unknown theorem '" + std::string(name) + "'");
}

std::vector<ConditionId> existence_conditions(Theorem theorem) {
  switch (theorem) {
    case Theorem::T1:
      return {ConditionId::Ek1, ConditionId::Ek2};
    case Theorem::T2:
      return {ConditionId::EPk1, ConditionId::EPk2};
    case Theorem::T3:
      return {ConditionId::Ek1, ConditionId::EPPk2};
    case Theorem::T4:
      return {ConditionId::EPPPk1, ConditionId::EPPPk2, ConditionId::EPPPk3};
  }
  return {};
}

std::vector<ConditionId> uniqueness_conditions(Theorem theorem) {
  switch (theorem) {
    case Theorem::T1:
    case Theorem::T3:
      return {ConditionId::Ek3};
    case Theorem::T2:
      return {ConditionId::EPk3};
    case Theorem::T4:
      return {ConditionId::EPPPk4};
  }
  return {};
}

TheoremVerdict certify(Theorem theorem, const SelfMap& map, const KEllipse& e, const SamplePlan& plan) {
  TheoremVerdict verdict;
  verdict.theorem = theorem;
  verdict.exact = std::holds_alternative<ExactPlan>(plan) && std::get<ExactPlan>(plan).exhaustive();
  verdict.existence_certified = true;
  for (ConditionId id : existence_conditions(theorem)) {
    verdict.existence.push_back(check_condition(id, map, e, plan));
    verdict.existence_certified = verdict.existence_certified && satisfied(verdict.existence.back());
  }
  verdict.uniqueness_certified = verdict.existence_certified;
  for (ConditionId id : uniqueness_conditions(theorem)) {
    verdict.uniqueness.push_back(check_condition(id, map, e, plan));
    verdict.uniqueness_certified = verdict.uniqueness_certified && satisfied(verdict.uniqueness.back());
  }
  return verdict;
}

SelfMap make_fixing_map(const std::vector<KEllipse>& ellipses, const ExactPoint& fallback) {
  if (ellipses.empty()) throw ArgumentError("make_fixing_map needs at least one ellipse");
  std::vector<Rule> rules;
  for (const auto& e : ellipses) {
    e.space().require_member(fallback);
    const bool on = e.space().exact() ? classify(e, fallback) == Placement::On
                                      : classify(e, to_double(fallback), kConditionTolerance) == Placement::On;
    if (on) throw ArgumentError("fallback " + to_string(fallback) + " lies on one of the ellipses");
    rules.push_back({OnEllipseRegion{e}, IdentityAction{}});
  }
  rules.push_back({OtherwiseRegion{}, ConstantAction{fallback}});
  return SelfMap(std::move(rules));
}

std::vector<Point> fixed_points_on(const SelfMap& map, const Metric& metric, const SampledPlan& plan) {
  return fixed_points_impl(map, metric, plan);
}

std::vector<ExactPoint> fixed_points_on(const SelfMap& map, const Metric& metric, const ExactPlan& plan) {
  return fixed_points_impl(map, metric, plan);
}

}  // namespace kellipse
