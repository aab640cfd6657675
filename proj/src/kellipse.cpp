#include "kellipse/kellipse.hpp"

#include <cmath>

#include "kellipse/level1d.hpp"

namespace kellipse {

namespace {

std::vector<Point> to_double(const std::vector<ExactPoint>& pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(kellipse::to_double(p));
  return out;
}

std::vector<ExactPoint> to_exact(const std::vector<Point>& pts) {
  std::vector<ExactPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(kellipse::to_exact(p));
  return out;
}

}  // namespace

SumField::SumField(Space space, std::vector<ExactPoint> foci)
    : space_(std::move(space)), exact_foci_(std::move(foci)), foci_(to_double(exact_foci_)) {
  if (exact_foci_.empty()) {
    throw ArgumentError("a k-ellipse needs at least one focus");
  }
  for (const auto& f : exact_foci_) {
    space_.require_member(f);
  }
}

SumField::SumField(Space space, const std::vector<Point>& foci) : SumField(std::move(space), to_exact(foci)) {}

double SumField::operator()(const Point& x) const {
  require_same_dimension(x.dimension(), space_.dimension());
  const Metric& metric = space_.metric();
  double sum = 0.0;
  for (const auto& f : foci_) sum += metric.distance(x, f);
  return sum;
}

Rational SumField::operator()(const ExactPoint& x) const {
  require_same_dimension(x.dimension(), space_.dimension());
  const Metric& metric = space_.metric();
  Rational sum = 0;
  for (const auto& f : exact_foci_) sum += metric.distance(x, f);
  return sum;
}

double xi(const SumField& field, const Point& x) { return field(x); }
Rational xi(const SumField& field, const ExactPoint& x) { return field(x); }

KEllipse::KEllipse(SumField field, Rational radius)
    : field_(std::move(field)), exact_radius_(std::move(radius)), radius_(to_double(exact_radius_)) {
  if (exact_radius_ < 0) {
    throw ArgumentError("k-ellipse radius must be >= 0");
  }
}

const char* to_string(Placement placement) {
  switch (placement) {
    case Placement::Interior: return "interior";
    case Placement::On: return "on";
    case Placement::Exterior: return "exterior";
  }
  return "?";
}

Placement classify(const KEllipse& e, const Point& x, double tol) {
  if (!(tol > 0.0)) {
    throw ArgumentError("classification tolerance must be > 0");
  }
  const double value = e.field()(x);
  if (std::abs(value - e.radius()) <= tol) return Placement::On;
  return value < e.radius() ? Placement::Interior : Placement::Exterior;
}

Placement classify(const KEllipse& e, const ExactPoint& x) {
  const Rational value = e.field()(x);
  if (value == e.exact_radius()) return Placement::On;
  return value < e.exact_radius() ? Placement::Interior : Placement::Exterior;
}

std::vector<ExactPoint> members_finite(const KEllipse& e) {
  const Space& space = e.space();
  std::vector<ExactPoint> out;
  if (space.is_finite()) {
    for (const auto& p : space.points()) {
      if (space.exact()) {
        if (e.field()(p) == e.exact_radius()) out.push_back(p);
      } else if (std::abs(e.field()(to_double(p)) - e.radius()) <= kPointEqualityTolerance) {
        out.push_back(p);
      }
    }
    return out;
  }
  if (space.dimension() != 1) {
    throw ArgumentError("members_finite needs a finite space or a one-dimensional continuum");
  }
  std::vector<Rational> foci;
  for (const auto& f : e.field().exact_foci()) foci.push_back(f[0]);
  const LevelSolution1D solution = solve_1d(std::move(foci), e.exact_radius());
  const auto* continuum = space.as_continuum();
  std::vector<Interval> level = solution.as_intervals();
  if (continuum->membership) {
    level = intersect_unions(level, continuum->membership->parts());
  }
  for (const auto& part : level) {
    if (!part.is_point()) {
      throw ArgumentError("the level set " + to_string(part) + " is not a finite point set");
    }
    out.push_back(ExactPoint{*part.lo});
  }
  return out;
}

}  // namespace kellipse
