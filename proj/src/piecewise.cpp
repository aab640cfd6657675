#include "kellipse/piecewise.hpp"

#include <algorithm>

#include "kellipse/error.hpp"

namespace kellipse {

PiecewiseAffine1D::PiecewiseAffine1D(std::vector<Rational> breakpoints, std::vector<AffinePiece> pieces,
                                     std::vector<Owner> owners)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), owners_(std::move(owners)) {
  if (pieces_.size() != breakpoints_.size() + 1) {
    throw ArgumentError("a piecewise map needs one more piece than breakpoints");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1] < breakpoints_[i])) throw ArgumentError("breakpoints must be strictly increasing");
  }
  if (owners_.empty()) owners_.assign(breakpoints_.size(), Owner::Right);
  if (owners_.size() != breakpoints_.size()) throw ArgumentError("one owner per breakpoint");
}

std::size_t PiecewiseAffine1D::piece_index(const Rational& x) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
  if (it != breakpoints_.end() && *it == x && owners_[i] == Owner::Right) ++i;
  return i;
}

Interval PiecewiseAffine1D::domain(std::size_t piece) const {
  Interval d = Interval::whole_line();
  if (piece > 0) {
    d.lo = breakpoints_[piece - 1];
    d.lo_closed = owners_[piece - 1] == Owner::Right;
  }
  if (piece < breakpoints_.size()) {
    d.hi = breakpoints_[piece];
    d.hi_closed = owners_[piece] == Owner::Left;
  }
  return d;
}

bool PiecewiseAffine1D::continuous_at(std::size_t b) const {
  return pieces_[b](breakpoints_[b]) == pieces_[b + 1](breakpoints_[b]);
}

bool PiecewiseAffine1D::continuous() const {
  for (std::size_t b = 0; b < breakpoints_.size(); ++b) {
    if (!continuous_at(b)) return false;
  }
  return true;
}

Rational PiecewiseAffine1D::operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }

double PiecewiseAffine1D::operator()(double x) const { return to_double((*this)(to_rational(x))); }

namespace {

std::string affine_text(const AffinePiece& p) {
  std::string out;
  if (p.slope == 0) return to_string(p.intercept);
  if (p.slope == -1) {
    out = "-x";
  } else if (p.slope != 1) {
    out = to_string(p.slope) + "x";
  } else {
    out = "x";
  }
  if (p.intercept > 0) out += " + " + to_string(p.intercept);
  if (p.intercept < 0) out += " - " + to_string(Rational(-p.intercept));
  return out;
}

}  // namespace

std::string PiecewiseAffine1D::describe() const {
  std::string out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) out += "; ";
    out += affine_text(pieces_[i]) + " on " + to_string(domain(i));
  }
  return out;
}

PiecewiseAffine1D srelu(const Rational& tl, const Rational& al, const Rational& tr, const Rational& ar) {
  if (tl > tr) throw ArgumentError("srelu needs tl <= tr");
  const AffinePiece left{al, tl - al * tl};
  const AffinePiece middle{1, 0};
  const AffinePiece right{ar, tr - ar * tr};
  if (tl == tr) return PiecewiseAffine1D({tl}, {left, right}, {Owner::Left});
  return PiecewiseAffine1D({tl, tr}, {left, middle, right}, {Owner::Left, Owner::Right});
}

bool FixedSet1D::contains(const Rational& x) const {
  return std::any_of(intervals.begin(), intervals.end(), [&](const Interval& i) { return i.contains(x); }) ||
         std::find(isolated.begin(), isolated.end(), x) != isolated.end();
}

std::vector<Interval> FixedSet1D::as_union() const {
  std::vector<Interval> parts = intervals;
  for (const auto& x : isolated) parts.push_back(Interval::point(x));
  return merge_intervals(std::move(parts));
}

std::string to_string(const FixedSet1D& fixed) {
  if (fixed.empty()) return "{}";
  return to_string(fixed.as_union());
}

FixedSet1D fixed_point_set(const PiecewiseAffine1D& f) {
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const AffinePiece& p = f.pieces()[i];
    const Interval d = f.domain(i);
    if (d.empty()) continue;
    if (p.slope == 1) {
      if (p.intercept == 0) parts.push_back(d);
      continue;
    }
    const Rational x = p.intercept / (1 - p.slope);
    if (d.contains(x)) parts.push_back(Interval::point(x));
  }
  FixedSet1D fixed;
  for (auto& part : merge_intervals(std::move(parts))) {
    if (part.is_point()) {
      fixed.isolated.push_back(*part.lo);
    } else {
      fixed.intervals.push_back(std::move(part));
    }
  }
  return fixed;
}

namespace {

/// Image of `part` under x -> sum_abs(foci, x), which is strictly monotone
/// on `part` (increasing when `increasing`).
Interval image(const Interval& part, const std::vector<Rational>& foci, bool increasing) {
  Interval out;
  auto value = [&](const std::optional<Rational>& x) -> std::optional<Rational> {
    if (!x) return std::nullopt;
    return sum_abs(foci, *x);
  };
  if (increasing) {
    out.lo = value(part.lo);
    out.hi = value(part.hi);
    out.lo_closed = part.lo_closed;
    out.hi_closed = part.hi_closed;
  } else {
    out.lo = value(part.hi);
    out.hi = value(part.lo);
    out.lo_closed = part.hi_closed;
    out.hi_closed = part.lo_closed;
  }
  if (!out.hi) out.hi_closed = false;
  return out;
}

}  // namespace

std::vector<Interval> fixed_kellipse_radii(const PiecewiseAffine1D& f, const std::vector<Rational>& foci) {
  if (foci.empty()) throw ArgumentError("at least one focus is required");
  const Minimum1D m = minimum_1d(foci);
  const std::vector<Interval> fix = fixed_point_set(f).as_union();

  // Right branch: xi maps (m.hi, inf) increasingly onto (r_star, inf);
  // left branch: (-inf, m.lo) decreasingly onto the same range.
  const Interval right_half{m.hi, std::nullopt, false, false};
  const Interval left_half{std::nullopt, m.lo, false, false};
  std::vector<Interval> right, left;
  for (const auto& part : intersect_unions(fix, {right_half})) right.push_back(image(part, foci, true));
  for (const auto& part : intersect_unions(fix, {left_half})) left.push_back(image(part, foci, false));
  std::vector<Interval> radii = intersect_unions(merge_intervals(std::move(right)), merge_intervals(std::move(left)));

  const Interval flat = Interval::closed(m.lo, m.hi);
  if (std::any_of(fix.begin(), fix.end(), [&](const Interval& part) { return part.contains(flat); })) {
    radii.push_back(Interval::point(m.value));
  }
  return merge_intervals(std::move(radii));
}

FixedKEllipseCheck is_fixed_kellipse(const PiecewiseAffine1D& f, const std::vector<Rational>& foci, const Rational& r) {
  FixedKEllipseCheck check;
  check.solution = solve_1d(foci, r);
  if (check.solution.empty()) return check;
  const std::vector<Interval> fix = fixed_point_set(f).as_union();
  check.fixed = true;
  for (const auto& piece : check.solution.as_intervals()) {
    const bool inside = std::any_of(fix.begin(), fix.end(), [&](const Interval& part) { return part.contains(piece); });
    check.fixed = check.fixed && inside;
  }
  return check;
}

SelfMap to_self_map(const PiecewiseAffine1D& f) {
  std::vector<Rule> rules;
  const std::size_t n = f.pieces().size();
  for (std::size_t i = 0; i < n; ++i) {
    const AffineAction action{f.pieces()[i].slope, f.pieces()[i].intercept};
    if (i + 1 == n) {
      rules.push_back({OtherwiseRegion{}, action});
    } else {
      rules.push_back({IntervalRegion{f.domain(i)}, action});
    }
  }
  return SelfMap(std::move(rules));
}

}  // namespace kellipse
