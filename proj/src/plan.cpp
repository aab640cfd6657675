#include "kellipse/plan.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kellipse/level1d.hpp"

namespace kellipse {

Rational radical_inverse(std::uint64_t index, unsigned base) {
  Rational result = 0;
  Rational scale(1, base);
  while (index) {
    result += Rational(static_cast<long long>(index % base)) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

TraceConfig default_trace_box(const KEllipse& e, int resolution) {
  const std::size_t n = e.space().dimension();
  const double r = e.radius();
  TraceConfig cfg;
  cfg.resolution = resolution;
  cfg.lo.assign(n, -INFINITY);
  cfg.hi.assign(n, INFINITY);
  for (const auto& f : e.field().foci()) {
    for (std::size_t i = 0; i < n; ++i) {
      cfg.lo[i] = std::max(cfg.lo[i], f[i] - r);
      cfg.hi[i] = std::min(cfg.hi[i], f[i] + r);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double pad = 0.05 * std::max(cfg.hi[i] - cfg.lo[i], 1.0);
    cfg.lo[i] -= pad;
    cfg.hi[i] += pad;
  }
  return cfg;
}

namespace {

ExactPlan finite_plan(const KEllipse& e, const PlanConfig& config) {
  ExactPlan plan;
  plan.seed = config.seed;
  plan.on_exhaustive = plan.off_exhaustive = true;
  for (const auto& p : e.space().points()) {
    (classify(e, p) == Placement::On ? plan.on_ellipse : plan.off_ellipse).push_back(p);
  }
  return plan;
}

SampledPlan finite_sampled_plan(const KEllipse& e, const PlanConfig& config) {
  SampledPlan plan;
  plan.seed = config.seed;
  plan.on_tol = config.on_tol;
  plan.on_exhaustive = plan.off_exhaustive = true;
  for (const auto& p : e.space().points()) {
    const Point q = to_double(p);
    (classify(e, q, config.on_tol) == Placement::On ? plan.on_ellipse : plan.off_ellipse).push_back(q);
  }
  return plan;
}

ExactPlan line_plan(const KEllipse& e, const PlanConfig& config) {
  ExactPlan plan;
  plan.seed = config.seed;
  const Space& space = e.space();
  std::vector<Rational> foci;
  for (const auto& f : e.field().exact_foci()) foci.push_back(f[0]);
  const auto [min_focus, max_focus] = std::minmax_element(foci.begin(), foci.end());
  const Rational& r = e.exact_radius();

  std::set<Rational> on;
  plan.on_exhaustive = true;
  std::vector<Interval> level = solve_1d(foci, r).as_intervals();
  if (const auto& membership = space.as_continuum()->membership) {
    level = intersect_unions(level, membership->parts());
  }
  for (const auto& part : level) {
    if (part.is_point()) {
      on.insert(*part.lo);
      continue;
    }
    // A flat level segment: sample it, and the plan is no longer exhaustive.
    plan.on_exhaustive = false;
    const Rational lo = part.lo_closed ? *part.lo : *part.lo + (*part.hi - *part.lo) / 64;
    const Rational hi = part.hi_closed ? *part.hi : *part.hi - (*part.hi - *part.lo) / 64;
    for (int i = 0; i <= 32; ++i) on.insert(lo + (hi - lo) * Rational(i, 32));
  }

  const GridSpec grid = config.grid ? *config.grid : GridSpec{*min_focus - r - 1, *max_focus + r + 1, 401};
  std::set<Rational> off;
  auto consider = [&](const Rational& x) {
    if (!on.count(x) && space.contains(ExactPoint{x})) off.insert(x);
  };
  if (grid.count == 1) {
    consider(grid.lo);
  } else {
    for (std::size_t i = 0; i < grid.count; ++i) {
      consider(grid.lo + (grid.hi - grid.lo) * Rational(static_cast<long long>(i), static_cast<long long>(grid.count - 1)));
    }
  }
  for (std::size_t i = 0; i < config.random_count; ++i) {
    consider(grid.lo + (grid.hi - grid.lo) * radical_inverse(config.seed + i + 1, 2));
  }
  for (const auto& p : config.extra_off) consider(p[0]);
  if (const auto& membership = space.as_continuum()->membership) {
    for (const auto& part : membership->parts()) {
      if (part.is_point()) consider(*part.lo);
    }
  }

  for (const auto& x : on) plan.on_ellipse.push_back(ExactPoint{x});
  for (const auto& x : off) plan.off_ellipse.push_back(ExactPoint{x});
  return plan;
}

SampledPlan continuum_plan(const KEllipse& e, const PlanConfig& config) {
  const std::size_t n = e.space().dimension();
  const TraceConfig cfg = config.trace ? *config.trace : default_trace_box(e, config.default_resolution);
  if (config.on_tol <= cfg.refine_tol) {
    throw ArgumentError("plan on_tol must exceed the trace refine_tol");
  }
  SampledPlan plan;
  plan.seed = config.seed;
  plan.on_tol = config.on_tol;
  if (n == 2) {
    for (auto& line : trace_2d(e, cfg).polylines) {
      for (auto& v : line.vertices) plan.on_ellipse.push_back(std::move(v));
    }
  } else if (n == 3) {
    plan.on_ellipse = sample_3d(e, cfg).points;
  } else {
    throw ArgumentError("sampled plans support dimensions 2 and 3");
  }

  static constexpr unsigned kBases[] = {2, 3, 5};
  for (std::uint64_t i = 0; plan.off_ellipse.size() < config.off_count && i < 64 * config.off_count + 64; ++i) {
    std::vector<double> coords(n);
    for (std::size_t a = 0; a < n; ++a) {
      coords[a] = cfg.lo[a] + (cfg.hi[a] - cfg.lo[a]) * to_double(radical_inverse(config.seed + i + 1, kBases[a]));
    }
    Point p(std::move(coords));
    if (classify(e, p, config.on_tol) != Placement::On) plan.off_ellipse.push_back(std::move(p));
  }
  for (const auto& p : config.extra_off) {
    Point q = to_double(p);
    if (classify(e, q, config.on_tol) != Placement::On) plan.off_ellipse.push_back(std::move(q));
  }
  return plan;
}

template <class S>
void validate_common(const BasicSamplePlan<S>& plan, const KEllipse& e, auto&& is_on) {
  for (const auto& p : plan.on_ellipse) {
    e.space().require_member(p);
    if (!is_on(p)) throw ArgumentError("plan lists " + to_string(p) + " as on the ellipse, but it is not");
  }
  for (const auto& p : plan.off_ellipse) {
    e.space().require_member(p);
    if (is_on(p)) throw ArgumentError("plan lists " + to_string(p) + " as off the ellipse, but it is on it");
  }
}

}  // namespace

SamplePlan build_plan(const KEllipse& e, const PlanConfig& config) {
  const Space& space = e.space();
  if (space.is_finite()) {
    if (space.exact()) return finite_plan(e, config);
    return finite_sampled_plan(e, config);
  }
  if (space.dimension() == 1) return line_plan(e, config);
  return continuum_plan(e, config);
}

void validate_plan(const ExactPlan& plan, const KEllipse& e) {
  validate_common(plan, e, [&](const ExactPoint& p) { return classify(e, p) == Placement::On; });
}

void validate_plan(const SampledPlan& plan, const KEllipse& e) {
  validate_common(plan, e, [&](const Point& p) { return classify(e, p, plan.on_tol) == Placement::On; });
}

}  // namespace kellipse
