#include "kellipse/level1d.hpp"

#include <algorithm>

#include "kellipse/error.hpp"

namespace kellipse {

std::vector<Interval> LevelSolution1D::as_intervals() const {
  if (const auto* pts = std::get_if<Points>(&value)) {
    std::vector<Interval> out;
    for (const auto& x : pts->values) out.push_back(Interval::point(x));
    return out;
  }
  if (const auto* seg = std::get_if<Segment>(&value)) {
    return {Interval::closed(seg->lo, seg->hi)};
  }
  return {};
}

std::string to_string(const LevelSolution1D& solution) {
  if (const auto* pts = std::get_if<LevelSolution1D::Points>(&solution.value)) {
    std::string out = "{";
    for (std::size_t i = 0; i < pts->values.size(); ++i) {
      out += (i ? ", " : "") + to_string(pts->values[i]);
    }
    return out + "}";
  }
  if (const auto* seg = std::get_if<LevelSolution1D::Segment>(&solution.value)) {
    return "[" + to_string(seg->lo) + ", " + to_string(seg->hi) + "]";
  }
  return "{}";
}

Rational sum_abs(const std::vector<Rational>& foci, const Rational& x) {
  Rational sum = 0;
  for (const auto& f : foci) sum += abs(Rational(x - f));
  return sum;
}

Minimum1D minimum_1d(std::vector<Rational> foci) {
  if (foci.empty()) {
    throw ArgumentError("a k-ellipse needs at least one focus");
  }
  std::sort(foci.begin(), foci.end());
  const std::size_t k = foci.size();
  Rational lo = foci[(k - 1) / 2];
  Rational hi = foci[k / 2];
  Rational value = sum_abs(foci, lo);
  return {std::move(value), std::move(lo), std::move(hi)};
}

LevelSolution1D solve_1d(std::vector<Rational> foci, const Rational& r) {
  const Minimum1D minimum = minimum_1d(foci);
  if (r < minimum.value) {
    return {LevelSolution1D::Empty{}};
  }
  if (r == minimum.value) {
    if (minimum.lo == minimum.hi) {
      return {LevelSolution1D::Points{{minimum.lo}}};
    }
    return {LevelSolution1D::Segment{minimum.lo, minimum.hi}};
  }

  std::sort(foci.begin(), foci.end());
  const auto k = static_cast<long>(foci.size());
  std::vector<Rational> roots;
  // Piece j spans [foci[j-1], foci[j]] with j foci to its left; the field has
  // slope 2j - k there. Pieces 0 and k are unbounded.
  for (long j = 0; j <= k; ++j) {
    const long slope = 2 * j - k;
    if (slope == 0) continue;
    // Anchor each piece at a finite end where the value is known exactly.
    const Rational& anchor = slope < 0 ? foci[static_cast<std::size_t>(j)]          // right end
                                       : foci[static_cast<std::size_t>(j - 1)];     // left end
    const Rational anchor_value = sum_abs(foci, anchor);
    // Along the piece, value = anchor_value + slope * (x - anchor).
    Rational x = anchor + (r - anchor_value) / Rational(slope);
    const bool above_lo = j == 0 || x >= foci[static_cast<std::size_t>(j - 1)];
    const bool below_hi = j == k || x <= foci[static_cast<std::size_t>(j)];
    if (above_lo && below_hi) {
      roots.push_back(std::move(x));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return {LevelSolution1D::Points{std::move(roots)}};
}

}  // namespace kellipse
