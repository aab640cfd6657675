#include "kellipse/median.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kellipse/level1d.hpp"

namespace kellipse {

const char* to_string(MedianMethod method) {
  switch (method) {
    case MedianMethod::ExactMedian1D: return "exact-median";
    case MedianMethod::FiniteScan: return "finite-scan";
    case MedianMethod::Weiszfeld: return "weiszfeld";
    case MedianMethod::PatternSearch: return "pattern-search";
  }
  return "?";
}

namespace {

using Vec = std::vector<double>;

double norm2(const Vec& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// All nonzero vectors in {-1,0,1}^n, normalised.
std::vector<Vec> compass_directions(std::size_t n) {
  std::vector<Vec> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Vec d(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) d[i] = static_cast<double>(c % 3) - 1.0;
    const double len = norm2(d);
    if (len == 0.0) continue;
    for (double& v : d) v /= len;
    out.push_back(std::move(d));
  }
  return out;
}

double coordinate_median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  return 0.5 * (values[(k - 1) / 2] + values[k / 2]);
}

double foci_scale(const std::vector<Point>& foci) {
  double spread = 0.0;
  for (std::size_t i = 0; i < foci.front().dimension(); ++i) {
    double lo = foci.front()[i], hi = lo;
    for (const auto& f : foci) {
      lo = std::min(lo, f[i]);
      hi = std::max(hi, f[i]);
    }
    spread = std::max(spread, hi - lo);
  }
  return spread > 0.0 ? spread : 1.0;
}

class Tracker {
 public:
  Tracker(const SumField& field, const MedianOptions& options) : field_(field), options_(options) {}

  double value(const Vec& x) const { return field_(Point(x)); }

  void accept(const Vec& x, double value) {
    best_ = x;
    best_value_ = value;
    if (options_.record_trace) trace_.push_back(value);
  }

  void count_iteration() {
    if (++iterations_ > options_.max_iterations) {
      throw SolverError("median solver did not converge within " + std::to_string(options_.max_iterations) +
                            " iterations",
                        best_, best_value_);
    }
  }

  MedianResult finish(MedianMethod method) {
    return {best_value_, Point(best_), method, iterations_, std::move(trace_)};
  }

  const Vec& best() const { return best_; }
  double best_value() const { return best_value_; }

 private:
  const SumField& field_;
  const MedianOptions& options_;
  Vec best_;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::size_t iterations_ = 0;
  std::vector<double> trace_;
};

// One-sided directional derivative of the Euclidean field at focus `at` along
// the unit vector u: multiplicity * |u| + sum of unit vectors from the other
// foci dotted with u.
struct FocusProbe {
  double slope;  // most negative directional derivative found
  Vec direction;
  double step;   // suggested step length along `direction`
};

FocusProbe probe_focus(const std::vector<Point>& foci, const Vec& at, const std::vector<Vec>& compass) {
  const std::size_t n = at.size();
  Vec pull(n, 0.0);  // R = sum over distinct foci of (at - a_i) / |at - a_i|
  double multiplicity = 0.0;
  double inverse_sum = 0.0;
  for (const auto& f : foci) {
    Vec diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = at[i] - f[i];
    const double len = norm2(diff);
    if (len <= kPointEqualityTolerance) {
      multiplicity += 1.0;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) pull[i] += diff[i] / len;
    inverse_sum += 1.0 / len;
  }
  auto slope_along = [&](const Vec& u) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += pull[i] * u[i];
    return multiplicity + dot;
  };

  FocusProbe best{0.0, Vec(n, 0.0), 0.0};
  for (const auto& u : compass) {
    const double s = slope_along(u);
    if (s < best.slope) best = {s, u, 0.0};
  }
  const double pull_norm = norm2(pull);
  if (pull_norm > 0.0) {
    Vec steepest(n);
    for (std::size_t i = 0; i < n; ++i) steepest[i] = -pull[i] / pull_norm;
    const double s = slope_along(steepest);
    if (s < best.slope) best = {s, steepest, 0.0};
  }
  if (inverse_sum > 0.0) {
    best.step = std::max(pull_norm - multiplicity, 0.0) / inverse_sum;
  }
  return best;
}

MedianResult weiszfeld(const SumField& field, const MedianOptions& options) {
  const auto& foci = field.foci();
  const std::size_t n = field.space().dimension();
  const double scale = foci_scale(foci);
  const auto compass = compass_directions(n);
  Tracker tracker(field, options);

  Vec x(n, 0.0);
  for (const auto& f : foci)
    for (std::size_t i = 0; i < n; ++i) x[i] += f[i] / static_cast<double>(foci.size());
  tracker.accept(x, tracker.value(x));

  // A focus with no descent direction is the minimiser. Weiszfeld only
  // creeps towards such a focus when the optimality condition is tight.
  for (const auto& f : foci) {
    const Vec at(f.coords().begin(), f.coords().end());
    if (probe_focus(foci, at, compass).slope >= -1e-12) {
      tracker.count_iteration();
      const double value = tracker.value(at);
      if (value <= tracker.best_value()) tracker.accept(at, value);
      return tracker.finish(MedianMethod::Weiszfeld);
    }
  }

  for (;;) {
    tracker.count_iteration();

    // Nearest focus; Weiszfeld's update is undefined on it.
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& f : foci) {
      Vec diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - f[i];
      nearest = std::min(nearest, norm2(diff));
    }

    Vec next(n, 0.0);
    if (nearest <= kPointEqualityTolerance) {
      const FocusProbe probe = probe_focus(foci, x, compass);
      if (probe.slope >= -1e-12) {
        return tracker.finish(MedianMethod::Weiszfeld);
      }
      // Leave the focus along the descent direction, halving until the
      // field actually decreases.
      double step = probe.step > 0.0 ? probe.step : scale * 1e-3;
      const double current = tracker.best_value();
      for (int halving = 0; halving < 200; ++halving, step *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) next[i] = x[i] + step * probe.direction[i];
        if (tracker.value(next) < current) break;
      }
    } else {
      double weight_sum = 0.0;
      for (const auto& f : foci) {
        Vec diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - f[i];
        const double w = 1.0 / norm2(diff);
        weight_sum += w;
        for (std::size_t i = 0; i < n; ++i) next[i] += w * f[i];
      }
      for (double& c : next) c /= weight_sum;
    }

    const double value = tracker.value(next);
    const double previous = tracker.best_value();
    Vec delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = next[i] - x[i];
    const double moved = norm2(delta);
    if (value <= previous) {
      tracker.accept(next, value);
      x = next;
    }
    if (value > previous || moved <= options.tolerance * 1e-3 * scale || previous - value <= 1e-16 * (1.0 + previous)) {
      return tracker.finish(MedianMethod::Weiszfeld);
    }
  }
}

MedianResult pattern_search(const SumField& field, const MedianOptions& options) {
  const auto& foci = field.foci();
  const std::size_t n = field.space().dimension();
  const double scale = foci_scale(foci);
  const auto compass = compass_directions(n);
  Tracker tracker(field, options);

  Vec x(n);
  if (field.space().metric().kind() == MetricKind::Linf && n == 2) {
    // max(|u|,|v|) = (|u+v| + |u-v|) / 2: medians of x+y and x-y.
    std::vector<double> s, t;
    for (const auto& f : foci) {
      s.push_back(f[0] + f[1]);
      t.push_back(f[0] - f[1]);
    }
    const double ms = coordinate_median(s), mt = coordinate_median(t);
    x = {0.5 * (ms + mt), 0.5 * (ms - mt)};
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> column;
      for (const auto& f : foci) column.push_back(f[i]);
      x[i] = coordinate_median(std::move(column));
    }
  }
  tracker.accept(x, tracker.value(x));

  double step = scale;
  while (step > options.tolerance * 1e-3 * scale) {
    tracker.count_iteration();
    double best_value = tracker.best_value();
    Vec best_point;
    for (const auto& d : compass) {
      Vec trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * d[i];
      const double v = tracker.value(trial);
      if (v < best_value) {
        best_value = v;
        best_point = std::move(trial);
      }
    }
    if (best_point.empty()) {
      step *= 0.5;
    } else {
      x = best_point;
      tracker.accept(x, best_value);
    }
  }
  return tracker.finish(MedianMethod::PatternSearch);
}

}  // namespace

MedianResult min_radius(const SumField& field, const MedianOptions& options) {
  const Space& space = field.space();
  if (space.is_finite()) {
    const ExactPoint* best = nullptr;
    double best_value = std::numeric_limits<double>::infinity();
    for (const auto& p : space.points()) {
      const double v = field(to_double(p));
      if (v < best_value) {
        best_value = v;
        best = &p;
      }
    }
    return {best_value, to_double(*best), MedianMethod::FiniteScan, space.points().size(), {}};
  }
  if (space.dimension() == 1) {
    std::vector<Rational> foci;
    for (const auto& f : field.exact_foci()) foci.push_back(f[0]);
    Minimum1D minimum = minimum_1d(std::move(foci));
    const auto* continuum = space.as_continuum();
    if (continuum->membership) {
      // Restricted line: the minimiser may be cut away; fall back to the
      // closest admissible end of each membership part.
      Rational best_x;
      std::optional<Rational> best_value;
      std::vector<Rational> all;
      for (const auto& f : field.exact_foci()) all.push_back(f[0]);
      for (const auto& part : intersect_unions({Interval::closed(minimum.lo, minimum.hi)},
                                               continuum->membership->parts())) {
        best_x = part.lo ? *part.lo : *part.hi;
        best_value = minimum.value;
        break;
      }
      if (!best_value) {
        for (const auto& part : continuum->membership->parts()) {
          for (const auto& end : {part.lo, part.hi}) {
            if (!end) continue;
            const Rational v = sum_abs(all, *end);
            if (!best_value || v < *best_value) {
              best_value = v;
              best_x = *end;
            }
          }
        }
      }
      return {to_double(*best_value), Point{to_double(best_x)}, MedianMethod::ExactMedian1D, 0, {}};
    }
    return {to_double(minimum.value), Point{to_double(minimum.lo)}, MedianMethod::ExactMedian1D, 0, {}};
  }
  if (field.k() == 1) {
    return {0.0, field.foci().front(), MedianMethod::ExactMedian1D, 0, {}};
  }
  if (space.metric().kind() == MetricKind::L2) {
    return weiszfeld(field, options);
  }
  return pattern_search(field, options);
}

}  // namespace kellipse
