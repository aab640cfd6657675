#include "kellipse/selfmap.hpp"

#include <cmath>

namespace kellipse {

namespace {

template <class S>
S from_rational(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return q;
  } else {
    return to_double(q);
  }
}

template <class S>
bool region_contains(const Region& region, const BasicPoint<S>& x) {
  return std::visit(
      [&](const auto& r) -> bool {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, OtherwiseRegion>) {
          return true;
        } else if constexpr (std::is_same_v<R, OnEllipseRegion>) {
          if (x.dimension() != r.ellipse.space().dimension()) return false;
          if constexpr (std::is_same_v<S, Rational>) {
            return classify(r.ellipse, x) == Placement::On;
          } else {
            return classify(r.ellipse, x, r.tol) == Placement::On;
          }
        } else if constexpr (std::is_same_v<R, FiniteSetRegion>) {
          for (const auto& p : r.points) {
            if constexpr (std::is_same_v<S, Rational>) {
              if (p == x) return true;
            } else {
              if (nearly_equal(to_double(p), x)) return true;
            }
          }
          return false;
        } else if constexpr (std::is_same_v<R, IntervalRegion>) {
          if (x.dimension() != 1) {
            throw ConfigurationError("interval region applied to a " + std::to_string(x.dimension()) + "D point");
          }
          return r.interval.contains(x[0]);
        } else {
          if (r.normal.size() != x.dimension()) {
            throw ConfigurationError("half-space normal has the wrong dimension");
          }
          S dot = 0;
          for (std::size_t i = 0; i < x.dimension(); ++i) dot += from_rational<S>(r.normal[i]) * x[i];
          const S offset = from_rational<S>(r.offset);
          return r.strict ? dot < offset : dot <= offset;
        }
      },
      region);
}

template <class S>
BasicPoint<S> apply(const Action& action, const BasicPoint<S>& x) {
  return std::visit(
      [&](const auto& a) -> BasicPoint<S> {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, IdentityAction>) {
          return x;
        } else if constexpr (std::is_same_v<A, ConstantAction>) {
          if (a.value.dimension() != x.dimension()) {
            throw ConfigurationError("constant action has the wrong dimension");
          }
          if constexpr (std::is_same_v<S, Rational>) {
            return a.value;
          } else {
            return to_double(a.value);
          }
        } else {
          if (x.dimension() != 1) {
            throw ConfigurationError("one-dimensional action applied to a " + std::to_string(x.dimension()) +
                                     "D point");
          }
          if constexpr (std::is_same_v<A, AffineAction>) {
            return BasicPoint<S>{S(from_rational<S>(a.slope) * x[0] + from_rational<S>(a.intercept))};
          } else {
            const S den = from_rational<S>(a.c) * x[0] + from_rational<S>(a.d);
            if (den == 0) {
              throw ConfigurationError("rational action evaluated at its pole");
            }
            const S num = from_rational<S>(a.a) * x[0] + from_rational<S>(a.b);
            return BasicPoint<S>{S(num / den)};
          }
        }
      },
      action);
}

template <class S>
long first_match(const std::vector<Rule>& rules, const BasicPoint<S>& x) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (region_contains(rules[i].region, x)) return static_cast<long>(i);
  }
  return -1;
}

template <class S>
BasicPoint<S> evaluate_rules(const std::vector<Rule>& rules, const BasicPoint<S>& x) {
  const long rule = first_match(rules, x);
  if (rule < 0) {
    throw ConfigurationError("no rule of the map matches " + to_string(x));
  }
  return apply(rules[static_cast<std::size_t>(rule)].action, x);
}

}  // namespace

bool SelfMap::total() const noexcept {
  return !rules_.empty() && std::holds_alternative<OtherwiseRegion>(rules_.back().region);
}

long SelfMap::matching_rule(const Point& x) const { return first_match(rules_, x); }
long SelfMap::matching_rule(const ExactPoint& x) const { return first_match(rules_, x); }

Point SelfMap::operator()(const Point& x) const { return evaluate_rules(rules_, x); }
ExactPoint SelfMap::operator()(const ExactPoint& x) const { return evaluate_rules(rules_, x); }

Point evaluate(const SelfMap& map, const Point& x) { return map(x); }
ExactPoint evaluate(const SelfMap& map, const ExactPoint& x) { return map(x); }

std::string SelfMap::describe() const {
  std::string out;
  for (const auto& rule : rules_) {
    out += std::visit(
        [](const auto& r) -> std::string {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, OtherwiseRegion>) {
            return "otherwise";
          } else if constexpr (std::is_same_v<R, OnEllipseRegion>) {
            return "on ellipse (r=" + to_string(r.ellipse.exact_radius()) + ")";
          } else if constexpr (std::is_same_v<R, FiniteSetRegion>) {
            std::string s = "in {";
            for (std::size_t i = 0; i < r.points.size(); ++i) s += (i ? ", " : "") + to_string(r.points[i]);
            return s + "}";
          } else if constexpr (std::is_same_v<R, IntervalRegion>) {
            return "in " + to_string(r.interval);
          } else {
            return "half-space";
          }
        },
        rule.region);
    out += " -> ";
    out += std::visit(
        [](const auto& a) -> std::string {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, IdentityAction>) {
            return "x";
          } else if constexpr (std::is_same_v<A, ConstantAction>) {
            return to_string(a.value);
          } else if constexpr (std::is_same_v<A, AffineAction>) {
            return to_string(a.slope) + "*x + " + to_string(a.intercept);
          } else {
            return "(" + to_string(a.a) + "*x + " + to_string(a.b) + ")/(" + to_string(a.c) + "*x + " +
                   to_string(a.d) + ")";
          }
        },
        rule.action);
    out += "\n";
  }
  return out;
}

}  // namespace kellipse
