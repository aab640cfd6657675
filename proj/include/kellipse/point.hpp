#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "kellipse/error.hpp"
#include "kellipse/rational.hpp"

namespace kellipse {

/// Absolute tolerance for point equality on continuum spaces.
inline constexpr double kPointEqualityTolerance = 1e-9;

/// An n-dimensional coordinate tuple. `Scalar` is double for numeric work
/// and Rational for exact evaluation.
template <class Scalar>
class BasicPoint {
 public:
  using scalar_type = Scalar;

  BasicPoint() = default;

  explicit BasicPoint(std::vector<Scalar> coords) : coords_(std::move(coords)) { validate(); }

  BasicPoint(std::initializer_list<Scalar> coords) : coords_(coords) { validate(); }

  std::size_t dimension() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Scalar> coords() const noexcept { return coords_; }

  friend bool operator==(const BasicPoint&, const BasicPoint&) = default;
  friend auto operator<=>(const BasicPoint& a, const BasicPoint& b) {
    return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                                  b.coords_.end(), compare_scalars);
  }

 private:
  static std::weak_ordering compare_scalars(const Scalar& a, const Scalar& b) {
    if (a < b) return std::weak_ordering::less;
    if (b < a) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

  void validate() const {
    if (coords_.empty()) {
      throw ArgumentError("a point needs at least one coordinate");
    }
    if constexpr (std::is_floating_point_v<Scalar>) {
      for (double c : coords_) {
        if (!std::isfinite(c)) {
          throw ArgumentError("point coordinates must be finite");
        }
      }
    }
  }

  std::vector<Scalar> coords_;
};

using Point = BasicPoint<double>;
using ExactPoint = BasicPoint<Rational>;

ExactPoint to_exact(const Point& p);
Point to_double(const ExactPoint& p);

/// Max-coordinate difference within `tol`.
bool nearly_equal(const Point& a, const Point& b, double tol = kPointEqualityTolerance);

std::string to_string(const Point& p);
std::string to_string(const ExactPoint& p);

inline void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ArgumentError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace kellipse
