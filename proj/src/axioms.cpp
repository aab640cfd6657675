#include "kellipse/axioms.hpp"

#include <random>

namespace kellipse {

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::NonNegativity: return "non-negativity";
    case Axiom::Identity: return "identity";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::Triangle: return "triangle";
  }
  return "?";
}

namespace {

constexpr double kSampleBox = 10.0;

class PointSampler {
 public:
  PointSampler(const Space& space, std::uint64_t seed) : space_(space), rng_(seed) {}

  Point next() {
    if (space_.is_finite()) {
      const auto& pts = space_.points();
      std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
      return to_double(pts[pick(rng_)]);
    }
    std::uniform_real_distribution<double> coord(-kSampleBox, kSampleBox);
    // Mixed spaces may have small members (isolated points); fall back to
    // them after repeated rejection.
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<double> coords(space_.dimension());
      for (auto& c : coords) c = coord(rng_);
      Point p(std::move(coords));
      if (space_.contains(p)) return p;
    }
    const auto& parts = space_.as_continuum()->membership->parts();
    const Interval& part = parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng_)];
    return Point{to_double(part.lo ? *part.lo : *part.hi)};
  }

 private:
  const Space& space_;
  std::mt19937_64 rng_;
};

}  // namespace

AxiomReport verify_metric_axioms(const Space& space, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 3) {
    throw ArgumentError("verify_metric_axioms needs sample_count >= 3");
  }
  const Metric& metric = space.metric();
  PointSampler sampler(space, seed);
  AxiomReport report;
  for (std::size_t n = 0; n < sample_count; ++n) {
    const Point a = sampler.next();
    const Point b = sampler.next();
    const Point c = sampler.next();
    ++report.triples_checked;

    const double ab = metric.distance(a, b);
    const double ba = metric.distance(b, a);
    const double bc = metric.distance(b, c);
    const double ac = metric.distance(a, c);
    const double aa = metric.distance(a, a);

    if (ab < 0.0) {
      report.violations.push_back({Axiom::NonNegativity, {a, b}, -ab});
    }
    if (ab != ba) {
      report.violations.push_back({Axiom::Symmetry, {a, b}, std::abs(ab - ba)});
    }
    if (aa != 0.0) {
      report.violations.push_back({Axiom::Identity, {a}, aa});
    }
    if (!nearly_equal(a, b) && ab <= 0.0) {
      report.violations.push_back({Axiom::Identity, {a, b}, 0.0});
    }
    if (ac > ab + bc + kTriangleTolerance) {
      report.violations.push_back({Axiom::Triangle, {a, b, c}, ac - ab - bc});
    }
  }
  return report;
}

}  // namespace kellipse
