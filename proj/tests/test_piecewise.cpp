#include <gtest/gtest.h>

#include <random>

#include "kellipse/piecewise.hpp"
#include "kellipse/verifier.hpp"
#include "oracles.hpp"

using namespace kellipse;

namespace {

std::vector<Rational> rationals(std::initializer_list<int> values) {
  std::vector<Rational> out;
  for (int v : values) out.emplace_back(v);
  return out;
}

const PiecewiseAffine1D& activation() {
  static const PiecewiseAffine1D f = srelu(-6, 2, 6, 3);
  return f;
}

// Piecewise maps that mix identity pieces, pieces with a single crossing
// and translations, with integer breakpoints.
PiecewiseAffine1D random_map(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nb(0, 4), coord(-15, 15), kind(0, 3), num(-3, 3), den(1, 2), icpt(-8, 8);
  std::set<int> bp;
  const int n = nb(rng);
  while (static_cast<int>(bp.size()) < n) bp.insert(coord(rng));
  std::vector<Rational> breakpoints(bp.begin(), bp.end());
  std::vector<AffinePiece> pieces;
  std::vector<Owner> owners;
  for (int i = 0; i <= n; ++i) {
    switch (kind(rng)) {
      case 0:
      case 1:
        pieces.push_back({1, 0});
        break;
      case 2:
        pieces.push_back({1, icpt(rng)});
        break;
      default:
        pieces.push_back({Rational(num(rng), den(rng)), icpt(rng)});
    }
    if (i < n) owners.push_back(kind(rng) % 2 ? Owner::Left : Owner::Right);
  }
  return PiecewiseAffine1D(breakpoints, pieces, owners);
}

bool in_union(const std::vector<Interval>& parts, const Rational& x) {
  return std::any_of(parts.begin(), parts.end(), [&](const Interval& p) { return p.contains(x); });
}

}  // namespace

TEST(Srelu, PiecesAndValues) {
  const auto& f = activation();
  EXPECT_EQ(f.describe(), "2x + 6 on (-inf, -6]; x on (-6, 6); 3x - 12 on [6, +inf)");
  EXPECT_EQ(f(Rational(-10)), -14);
  EXPECT_EQ(f(Rational(-6)), -6);
  EXPECT_EQ(f(Rational(1, 3)), Rational(1, 3));
  EXPECT_EQ(f(Rational(6)), 6);
  EXPECT_EQ(f(Rational(10)), 18);
  EXPECT_DOUBLE_EQ(f(10.0), 18.0);
  EXPECT_TRUE(f.continuous());
  EXPECT_EQ(f.piece_index(Rational(-6)), 0u);
  EXPECT_EQ(f.piece_index(Rational(6)), 2u);
}

TEST(Srelu, UnitSlopesGiveTheIdentity) {
  const auto f = srelu(-2, 1, 5, 1);
  for (int x = -20; x <= 20; ++x) EXPECT_EQ(f(Rational(x, 3)), Rational(x, 3));
  EXPECT_EQ(to_string(fixed_point_set(f)), "(-inf, +inf)");
}

TEST(Srelu, DegenerateAndInvalidParameters) {
  EXPECT_THROW(srelu(3, 2, 1, 2), ArgumentError);
  const auto f = srelu(2, 2, 2, 3);
  EXPECT_EQ(f.pieces().size(), 2u);
  EXPECT_EQ(f(Rational(2)), 2);
  EXPECT_EQ(to_string(fixed_point_set(f)), "{2}");
}

TEST(Piecewise, ConstructionErrors) {
  EXPECT_THROW(PiecewiseAffine1D({}, {}), ArgumentError);
  EXPECT_THROW(PiecewiseAffine1D(rationals({1, 1}), {{1, 0}, {1, 0}, {1, 0}}), ArgumentError);
  EXPECT_THROW(PiecewiseAffine1D(rationals({1}), {{1, 0}, {1, 0}}, {Owner::Left, Owner::Left}), ArgumentError);
  const PiecewiseAffine1D jump(rationals({0}), {{1, 0}, {1, 1}});
  EXPECT_FALSE(jump.continuous_at(0));
  EXPECT_EQ(jump(Rational(0)), 1);
}

TEST(Piecewise, FixedSetOfTheActivation) {
  const FixedSet1D fix = fixed_point_set(activation());
  EXPECT_EQ(to_string(fix), "[-6, 6]");
  EXPECT_TRUE(fix.contains(-6));
  EXPECT_TRUE(fix.contains(6));
  EXPECT_FALSE(fix.contains(Rational(13, 2)));
}

TEST(Piecewise, IsolatedFixedPoints) {
  // 2x - 3 crosses the diagonal at 3; -x crosses at 0.
  const PiecewiseAffine1D f(rationals({1}), {{-1, 0}, {2, -3}});
  const FixedSet1D fix = fixed_point_set(f);
  EXPECT_EQ(to_string(fix), "{0} U {3}");
  EXPECT_EQ(fix.isolated.size(), 2u);
  EXPECT_EQ(to_string(fixed_point_set(PiecewiseAffine1D({}, {{1, 1}}))), "{}");
}

TEST(PiecewiseProperty, FixedSetIsExact) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> num(-2000, 2000), den(1, 97);
  for (int trial = 0; trial < 40; ++trial) {
    const PiecewiseAffine1D f = trial == 0 ? activation() : random_map(rng);
    const FixedSet1D fix = fixed_point_set(f);
    const auto parts = fix.as_union();
    std::size_t inside = 0, outside = 0;
    for (int attempt = 0; attempt < 100000 && (inside < 100 || outside < 100); ++attempt) {
      const Rational x(num(rng), den(rng) * 10);
      if (in_union(parts, x)) {
        if (inside++ < 100) EXPECT_EQ(f(x), x) << f.describe() << " at " << to_string(x);
      } else if (outside++ < 100) {
        EXPECT_NE(f(x), x) << f.describe() << " at " << to_string(x);
      }
    }
    for (const auto& x : fix.isolated) EXPECT_EQ(f(x), x);
    for (const auto& part : fix.intervals) {
      if (part.lo && part.lo_closed) EXPECT_EQ(f(*part.lo), *part.lo);
      if (part.hi && part.hi_closed) EXPECT_EQ(f(*part.hi), *part.hi);
      if (part.lo && !part.lo_closed) EXPECT_NE(f(*part.lo), *part.lo);
      if (part.hi && !part.hi_closed) EXPECT_NE(f(*part.hi), *part.hi);
    }
  }
}

TEST(Radii, ActivationExamples) {
  EXPECT_EQ(to_string(fixed_kellipse_radii(activation(), rationals({-1, 0, 1}))), "[2, 18]");
  EXPECT_EQ(to_string(fixed_kellipse_radii(activation(), rationals({-2, 0, 2}))), "[4, 18]");
  EXPECT_EQ(to_string(fixed_kellipse_radii(activation(), rationals({20, 21, 22}))), "{}");
}

TEST(Radii, IdentityAdmitsEveryRadius) {
  const auto id = srelu(0, 1, 0, 1);
  EXPECT_EQ(to_string(fixed_kellipse_radii(id, rationals({-1, 0, 1}))), "[2, +inf)");
  EXPECT_EQ(to_string(fixed_kellipse_radii(id, rationals({0, 4}))), "[4, +inf)");
  EXPECT_THROW(fixed_kellipse_radii(id, {}), ArgumentError);
}

TEST(Radii, TranslationFixesNothing) {
  EXPECT_TRUE(fixed_kellipse_radii(PiecewiseAffine1D({}, {{1, 1}}), rationals({-1, 0, 1})).empty());
}

TEST(FixedKEllipse, ActivationInstances) {
  const auto a = is_fixed_kellipse(activation(), rationals({-1, 0, 1}), 15);
  EXPECT_TRUE(a.fixed);
  EXPECT_EQ(to_string(a.solution), "{-5, 5}");
  const auto b = is_fixed_kellipse(activation(), rationals({-2, 0, 2}), 6);
  EXPECT_TRUE(b.fixed);
  EXPECT_EQ(to_string(b.solution), "{-2, 2}");
  const auto c = is_fixed_kellipse(activation(), rationals({-1, 0, 1}), 30);
  EXPECT_FALSE(c.fixed);
  EXPECT_EQ(to_string(c.solution), "{-10, 10}");
  EXPECT_FALSE(is_fixed_kellipse(activation(), rationals({-1, 0, 1}), 1).fixed);
}

TEST(FixedKEllipse, SymmetricFociAtLevelNine) {
  for (int alpha : {1, 2, 3}) {
    const auto check = is_fixed_kellipse(activation(), {Rational(-alpha), 0, Rational(alpha)}, 9);
    EXPECT_TRUE(check.fixed) << alpha;
    EXPECT_EQ(to_string(check.solution), "{-3, 3}") << alpha;
  }
  // Past alpha = 3 the level set leaves the outer branches.
  EXPECT_EQ(to_string(solve_1d({Rational(-4), 0, Rational(4)}, 9)), "{-1, 1}");
  EXPECT_EQ(to_string(solve_1d({Rational(-5), 0, Rational(5)}, 9)), "{}");
}

TEST(PiecewiseProperty, RadiiMatchBruteForceScan) {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<int> nfoci(1, 4), coord(-8, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const PiecewiseAffine1D f = trial == 0 ? activation() : random_map(rng);
    std::vector<Rational> foci;
    const int k = nfoci(rng);
    for (int i = 0; i < k; ++i) foci.emplace_back(coord(rng));
    const auto radii = fixed_kellipse_radii(f, foci);
    const Rational r_star = minimum_1d(foci).value;
    for (int step = 0; step <= 6400; ++step) {
      const Rational r = r_star + Rational(step, 64);
      ASSERT_EQ(is_fixed_kellipse(f, foci, r).fixed, in_union(radii, r))
          << f.describe() << " r = " << to_string(r) << " radii " << to_string(radii);
    }
  }
}

TEST(PiecewiseProperty, BranchesMoveOutwards) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> nfoci(1, 5), coord(-8, 8), inc(1, 40);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> foci;
    const int k = nfoci(rng);
    for (int i = 0; i < k; ++i) foci.emplace_back(coord(rng));
    Rational r = minimum_1d(foci).value + Rational(inc(rng), 8);
    auto ends = [&](const Rational& level) {
      const LevelSolution1D s = solve_1d(foci, level);
      const auto& pts = std::get<LevelSolution1D::Points>(s.value).values;
      return std::pair{pts.front(), pts.back()};
    };
    auto [lo, hi] = ends(r);
    for (int i = 0; i < 10; ++i) {
      r += Rational(inc(rng), 8);
      const auto [lo2, hi2] = ends(r);
      EXPECT_LT(lo2, lo);
      EXPECT_GT(hi2, hi);
      lo = lo2;
      hi = hi2;
    }
  }
}

TEST(PiecewiseProperty, FixedEllipsesSatisfyTheCaristiConditions) {
  std::mt19937_64 rng(54);
  std::uniform_int_distribution<int> nfoci(1, 4), coord(-8, 8), rad(0, 800);
  std::size_t fixed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const PiecewiseAffine1D f = random_map(rng);
    std::vector<Rational> foci;
    const int k = nfoci(rng);
    for (int i = 0; i < k; ++i) foci.emplace_back(coord(rng));
    const Rational r = minimum_1d(foci).value + Rational(rad(rng), 16);
    const auto check = is_fixed_kellipse(f, foci, r);
    if (!check.fixed) continue;
    const auto* pts = std::get_if<LevelSolution1D::Points>(&check.solution.value);
    if (!pts) continue;
    ++fixed;
    std::vector<ExactPoint> ef;
    for (const auto& x : foci) ef.push_back(ExactPoint{x});
    const KEllipse e(SumField(Space::continuum(1, Metric::l2()), ef), r);
    ExactPlan plan;
    for (const auto& x : pts->values) plan.on_ellipse.push_back(ExactPoint{x});
    plan.on_exhaustive = true;
    validate_plan(plan, e);
    const SelfMap map = to_self_map(f);
    EXPECT_EQ(check_condition(ConditionId::Ek1, map, e, plan).verdict, Verdict::Pass);
    EXPECT_EQ(check_condition(ConditionId::Ek2, map, e, plan).verdict, Verdict::Pass);
  }
  EXPECT_GT(fixed, 30u);
}

TEST(Piecewise, SelfMapAgreesWithDirectEvaluation) {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> num(-400, 400);
  for (int trial = 0; trial < 50; ++trial) {
    const PiecewiseAffine1D f = random_map(rng);
    const SelfMap map = to_self_map(f);
    for (int i = 0; i < 50; ++i) {
      const Rational x(num(rng), 16);
      EXPECT_EQ(map(ExactPoint{x})[0], f(x));
    }
    for (const auto& b : f.breakpoints()) EXPECT_EQ(map(ExactPoint{b})[0], f(b));
  }
}
