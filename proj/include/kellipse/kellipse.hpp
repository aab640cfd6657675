#pragma once

#include <vector>

#include "kellipse/space.hpp"

namespace kellipse {

/// The sum-of-distances field x -> sum_i d(x, x_i) over a list of foci.
/// Foci are kept exactly; a double copy serves numeric evaluation.
/// Duplicate foci are allowed and act as weights.
class SumField {
 public:
  SumField(Space space, std::vector<ExactPoint> foci);
  SumField(Space space, const std::vector<Point>& foci);

  const Space& space() const noexcept { return space_; }
  std::size_t k() const noexcept { return foci_.size(); }
  const std::vector<Point>& foci() const noexcept { return foci_; }
  const std::vector<ExactPoint>& exact_foci() const noexcept { return exact_foci_; }

  /// Checks dimension only, so the field can be sampled off the space
  /// (tracer grids, images of a map).
  double operator()(const Point& x) const;
  Rational operator()(const ExactPoint& x) const;

 private:
  Space space_;
  std::vector<ExactPoint> exact_foci_;
  std::vector<Point> foci_;
};

double xi(const SumField& field, const Point& x);
Rational xi(const SumField& field, const ExactPoint& x);

/// E[x_1..x_k; r] = { x : sum_i d(x, x_i) = r }.
class KEllipse {
 public:
  KEllipse(SumField field, Rational radius);
  KEllipse(SumField field, double radius) : KEllipse(std::move(field), to_rational(radius)) {}

  const SumField& field() const noexcept { return field_; }
  const Space& space() const noexcept { return field_.space(); }
  std::size_t k() const noexcept { return field_.k(); }
  double radius() const noexcept { return radius_; }
  const Rational& exact_radius() const noexcept { return exact_radius_; }

 private:
  SumField field_;
  Rational exact_radius_;
  double radius_;
};

enum class Placement { Interior, On, Exterior };

const char* to_string(Placement placement);

/// On if |xi(x) - r| <= tol, otherwise Interior or Exterior. tol must be > 0.
Placement classify(const KEllipse& e, const Point& x, double tol);
/// Zero-tolerance classification in exact arithmetic.
Placement classify(const KEllipse& e, const ExactPoint& x);

/// Exact members of the ellipse in a finite space, or in a one-dimensional
/// (possibly mixed) continuum through the exact 1D solve. Throws
/// ArgumentError when the level set is not a finite point set.
std::vector<ExactPoint> members_finite(const KEllipse& e);

}  // namespace kellipse
