#include "kellipse/space.hpp"

#include <algorithm>

namespace kellipse {

bool Membership::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(x); });
}

bool Membership::contains(double x) const { return contains(to_rational(x)); }

Space Space::continuum(std::size_t dimension, Metric metric) {
  if (dimension == 0) {
    throw ArgumentError("a continuum needs dimension >= 1");
  }
  return Space(Continuum{dimension, metric, std::nullopt});
}

Space Space::mixed(Metric metric, Membership membership) {
  if (membership.parts().empty()) {
    throw ArgumentError("membership predicate describes an empty set");
  }
  return Space(Continuum{1, metric, std::move(membership)});
}

Space Space::finite(std::vector<ExactPoint> points, Metric metric) {
  if (points.empty()) {
    throw ArgumentError("a finite space needs at least one point");
  }
  std::vector<ExactPoint> unique;
  for (auto& p : points) {
    if (!unique.empty()) {
      require_same_dimension(p.dimension(), unique.front().dimension());
    }
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) {
      unique.push_back(std::move(p));
    }
  }
  return Space(FiniteSet{std::move(unique), metric});
}

std::size_t Space::dimension() const noexcept {
  if (const auto* c = std::get_if<Continuum>(&data_)) return c->dimension;
  return std::get<FiniteSet>(data_).points.front().dimension();
}

const Metric& Space::metric() const noexcept {
  if (const auto* c = std::get_if<Continuum>(&data_)) return c->metric;
  return std::get<FiniteSet>(data_).metric;
}

bool Space::is_mixed() const noexcept {
  const auto* c = std::get_if<Continuum>(&data_);
  return c && c->membership.has_value();
}

const std::vector<ExactPoint>& Space::points() const {
  if (const auto* f = std::get_if<FiniteSet>(&data_)) return f->points;
  throw ArgumentError("points() requires a finite space");
}

bool Space::contains(const Point& p) const {
  if (p.dimension() != dimension()) return false;
  if (const auto* c = std::get_if<Continuum>(&data_)) {
    return !c->membership || c->membership->contains(p[0]);
  }
  return contains(to_exact(p));
}

bool Space::contains(const ExactPoint& p) const {
  if (p.dimension() != dimension()) return false;
  if (const auto* c = std::get_if<Continuum>(&data_)) {
    return !c->membership || c->membership->contains(p[0]);
  }
  const auto& pts = std::get<FiniteSet>(data_).points;
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

}  // namespace kellipse
