#include "kellipse/interval.hpp"

#include <algorithm>

namespace kellipse {

bool Interval::contains(const Rational& x) const {
  if (lo && (x < *lo || (x == *lo && !lo_closed))) return false;
  if (hi && (x > *hi || (x == *hi && !hi_closed))) return false;
  return true;
}

bool Interval::contains(double x) const { return contains(to_rational(x)); }

bool Interval::empty() const {
  if (!lo || !hi) return false;
  if (*lo < *hi) return false;
  if (*lo > *hi) return true;
  return !(lo_closed && hi_closed);
}

bool Interval::contains(const Interval& other) const {
  if (other.empty()) return true;
  if (lo) {
    if (!other.lo) return false;
    if (*other.lo < *lo) return false;
    if (*other.lo == *lo && other.lo_closed && !lo_closed) return false;
  }
  if (hi) {
    if (!other.hi) return false;
    if (*other.hi > *hi) return false;
    if (*other.hi == *hi && other.hi_closed && !hi_closed) return false;
  }
  return true;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval out;
  if (!a.lo) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else if (!b.lo || *a.lo > *b.lo) {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed;
  } else if (*b.lo > *a.lo) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (!a.hi) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else if (!b.hi || *a.hi < *b.hi) {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed;
  } else if (*b.hi < *a.hi) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed && b.hi_closed;
  }
  if (!out.lo) out.lo_closed = false;
  if (!out.hi) out.hi_closed = false;
  return out;
}

namespace {

// Orders by lower end; -inf first, closed before open at equal values.
bool lower_end_less(const Interval& a, const Interval& b) {
  if (!a.lo || !b.lo) return !a.lo && b.lo;
  if (*a.lo != *b.lo) return *a.lo < *b.lo;
  return a.lo_closed && !b.lo_closed;
}

}  // namespace

std::vector<Interval> merge_intervals(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) { return i.empty(); });
  std::sort(parts.begin(), parts.end(), lower_end_less);
  std::vector<Interval> merged;
  for (auto& part : parts) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      // Joinable when last has no upper end, or the next lower end is below
      // last's upper end, or they meet at a value one of them includes.
      bool joinable = !last.hi || !part.lo || *part.lo < *last.hi ||
                      (*part.lo == *last.hi && (last.hi_closed || part.lo_closed));
      if (joinable) {
        if (!part.hi || (last.hi && *part.hi > *last.hi)) {
          last.hi = part.hi;
          last.hi_closed = part.hi_closed;
        } else if (last.hi && *part.hi == *last.hi) {
          last.hi_closed = last.hi_closed || part.hi_closed;
        }
        continue;
      }
    }
    merged.push_back(std::move(part));
  }
  return merged;
}

std::vector<Interval> intersect_unions(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Interval both = intersect(x, y);
      if (!both.empty()) out.push_back(std::move(both));
    }
  }
  return merge_intervals(std::move(out));
}

std::string to_string(const Interval& interval) {
  if (interval.empty()) return "{}";
  if (interval.is_point()) return "{" + to_string(*interval.lo) + "}";
  std::string out = interval.lo_closed ? "[" : "(";
  out += interval.lo ? to_string(*interval.lo) : "-inf";
  out += ", ";
  out += interval.hi ? to_string(*interval.hi) : "+inf";
  out += interval.hi_closed ? "]" : ")";
  return out;
}

std::string to_string(const std::vector<Interval>& intervals) {
  if (intervals.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    out += (i ? " U " : "") + to_string(intervals[i]);
  }
  return out;
}

}  // namespace kellipse
