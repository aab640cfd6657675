#include "kellipse/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kellipse {

ExactPoint to_exact(const Point& p) {
  std::vector<Rational> coords;
  coords.reserve(p.dimension());
  for (double c : p.coords()) {
    coords.push_back(to_rational(c));
  }
  return ExactPoint(std::move(coords));
}

Point to_double(const ExactPoint& p) {
  std::vector<double> coords;
  coords.reserve(p.dimension());
  for (const Rational& c : p.coords()) {
    coords.push_back(to_double(c));
  }
  return Point(std::move(coords));
}

bool nearly_equal(const Point& a, const Point& b, double tol) {
  if (a.dimension() != b.dimension()) {
    return false;
  }
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) {
      return false;
    }
  }
  return true;
}

std::string to_string(const Point& p) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    out << (i ? ", " : "") << p[i];
  }
  out << ')';
  return out.str();
}

std::string to_string(const ExactPoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    out += (i ? ", " : "") + to_string(p[i]);
  }
  return out + ")";
}

Metric Metric::lp(double p) {
  if (!(p >= kMinExponent && p <= kMaxExponent)) {
    throw ArgumentError("Lp exponent must lie in [1, 64], got " + std::to_string(p));
  }
  return Metric(MetricKind::Lp, p);
}

namespace {

// x^p for integer p by repeated squaring; pow otherwise.
double power(double x, double p) {
  if (p == std::floor(p)) {
    auto n = static_cast<unsigned>(p);
    double result = 1.0;
    double base = x;
    while (n) {
      if (n & 1u) result *= base;
      base *= base;
      n >>= 1u;
    }
    return result;
  }
  return std::pow(x, p);
}

double root(double x, double p) {
  if (p == 2.0) return std::sqrt(x);
  if (p == 4.0) return std::sqrt(std::sqrt(x));
  return std::pow(x, 1.0 / p);
}

}  // namespace

double Metric::distance(const Point& a, const Point& b) const {
  require_same_dimension(a.dimension(), b.dimension());
  const std::size_t n = a.dimension();
  if (kind_ == MetricKind::L1) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
    return sum;
  }
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, std::abs(a[i] - b[i]));
  if (kind_ == MetricKind::Linf || largest == 0.0) {
    return largest;
  }
  // |v|_inf * (sum (|v_i| / |v|_inf)^p)^(1/p) cannot overflow.
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += power(std::abs(a[i] - b[i]) / largest, p_);
  return largest * root(sum, p_);
}

Rational Metric::distance(const ExactPoint& a, const ExactPoint& b) const {
  require_same_dimension(a.dimension(), b.dimension());
  const std::size_t n = a.dimension();
  if (n == 1) {
    return abs(Rational(a[0] - b[0]));
  }
  if (kind_ == MetricKind::L1) {
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += abs(Rational(a[i] - b[i]));
    return sum;
  }
  if (kind_ == MetricKind::Linf) {
    Rational largest = 0;
    for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, abs(Rational(a[i] - b[i])));
    return largest;
  }
  throw ArgumentError(name() + " distances in dimension " + std::to_string(n) + " are not rational");
}

std::string Metric::name() const {
  switch (kind_) {
    case MetricKind::L1: return "L1";
    case MetricKind::L2: return "L2";
    case MetricKind::Linf: return "Linf";
    case MetricKind::Lp: {
      std::ostringstream out;
      out << "Lp(" << p_ << ")";
      return out.str();
    }
  }
  return "?";
}

}  // namespace kellipse
