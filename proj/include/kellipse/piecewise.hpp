#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kellipse/interval.hpp"
#include "kellipse/level1d.hpp"
#include "kellipse/selfmap.hpp"

namespace kellipse {

struct AffinePiece {
  Rational slope;
  Rational intercept;

  Rational operator()(const Rational& x) const { return slope * x + intercept; }
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

/// Which neighbouring piece a breakpoint belongs to.
enum class Owner { Left, Right };

/// A piecewise-affine map on the real line with exact rational data.
/// Piece i covers the span between breakpoints i-1 and i.
class PiecewiseAffine1D {
 public:
  /// Breakpoints strictly increasing, pieces.size() == breakpoints.size() + 1.
  /// Owners default to Right (pieces are left-closed, right-open).
  PiecewiseAffine1D(std::vector<Rational> breakpoints, std::vector<AffinePiece> pieces,
                    std::vector<Owner> owners = {});

  const std::vector<Rational>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<AffinePiece>& pieces() const noexcept { return pieces_; }
  const std::vector<Owner>& owners() const noexcept { return owners_; }

  std::size_t piece_index(const Rational& x) const;
  Interval domain(std::size_t piece) const;
  bool continuous_at(std::size_t breakpoint) const;
  bool continuous() const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  std::string describe() const;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<AffinePiece> pieces_;
  std::vector<Owner> owners_;
};

/// tl + al (x - tl) for x <= tl, x on (tl, tr), tr + ar (x - tr) for x >= tr.
PiecewiseAffine1D srelu(const Rational& tl, const Rational& al, const Rational& tr, const Rational& ar);

/// Fix(f) = { x : f(x) = x } as disjoint intervals and isolated points.
struct FixedSet1D {
  std::vector<Interval> intervals;
  std::vector<Rational> isolated;

  bool empty() const { return intervals.empty() && isolated.empty(); }
  bool contains(const Rational& x) const;
  /// Intervals and points as one sorted union.
  std::vector<Interval> as_union() const;
};

std::string to_string(const FixedSet1D& fixed);

FixedSet1D fixed_point_set(const PiecewiseAffine1D& f);

/// { r >= r_star : solve_1d(foci, r) lies in Fix(f) } as a sorted union of
/// intervals. An unbounded upper end means +inf.
std::vector<Interval> fixed_kellipse_radii(const PiecewiseAffine1D& f, const std::vector<Rational>& foci);

struct FixedKEllipseCheck {
  bool fixed = false;
  LevelSolution1D solution;
};

/// Whether the level set is non-empty and contained in Fix(f).
FixedKEllipseCheck is_fixed_kellipse(const PiecewiseAffine1D& f, const std::vector<Rational>& foci, const Rational& r);

/// The same map as a rule table over the line.
SelfMap to_self_map(const PiecewiseAffine1D& f);

}  // namespace kellipse
