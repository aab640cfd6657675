#include <gtest/gtest.h>

#include <random>

#include "kellipse/median.hpp"
#include "oracles.hpp"

using namespace kellipse;

namespace {

struct RandomFoci {
  std::vector<Point> points;
  std::vector<oracle::Vec> raw;
};

RandomFoci random_foci(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::uniform_real_distribution<double> coord(-10, 10);
  RandomFoci out;
  for (std::size_t i = 0; i < k; ++i) {
    oracle::Vec c(n);
    for (auto& v : c) v = coord(rng);
    out.raw.push_back(c);
    out.points.emplace_back(c);
  }
  return out;
}

}  // namespace

TEST(MedianProperty, EuclideanMatchesReferenceMinimum) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> kdist(2, 6), ndist(2, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = ndist(rng), k = kdist(rng);
    const RandomFoci foci = random_foci(rng, n, k);
    const SumField field(Space::continuum(n, Metric::l2()), foci.points);
    const MedianResult result = min_radius(field);
    const double reference = oracle::grid_polish_minimum(foci.raw, 2, n == 2 ? 41 : 15);
    EXPECT_NEAR(result.r_star, reference, 1e-6 * (1 + reference)) << "trial " << trial;
    EXPECT_NEAR(oracle::field(foci.raw, oracle::coords(result.argmin), 2), result.r_star, 1e-9 * (1 + reference));
    EXPECT_EQ(result.method, MedianMethod::Weiszfeld);
  }
}

TEST(MedianProperty, OtherMetricsMatchReferenceMinimum) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<std::size_t> kdist(2, 5);
  const std::vector<std::pair<Metric, double>> metrics{
      {Metric::l1(), 1}, {Metric::linf(), 0}, {Metric::lp(3), 3}, {Metric::lp(1.5), 1.5}};
  for (int trial = 0; trial < 40; ++trial) {
    const auto& [metric, p] = metrics[trial % metrics.size()];
    const std::size_t n = 2 + trial % 2, k = kdist(rng);
    const RandomFoci foci = random_foci(rng, n, k);
    const SumField field(Space::continuum(n, metric), foci.points);
    const MedianResult result = min_radius(field);
    const double reference = oracle::grid_polish_minimum(foci.raw, p, n == 2 ? 41 : 15);
    EXPECT_LE(result.r_star, reference + 1e-6 * (1 + reference)) << metric.name();
    EXPECT_GE(result.r_star, reference - 1e-6 * (1 + reference)) << metric.name();
  }
}

TEST(Median, TraceIsMonotone) {
  std::mt19937_64 rng(33);
  MedianOptions options;
  options.record_trace = true;
  for (int trial = 0; trial < 20; ++trial) {
    const RandomFoci foci = random_foci(rng, 2, 5);
    for (const auto& metric : {Metric::l2(), Metric::l1()}) {
      const MedianResult result = min_radius(SumField(Space::continuum(2, metric), foci.points), options);
      ASSERT_FALSE(result.trace.empty());
      for (std::size_t i = 1; i < result.trace.size(); ++i) EXPECT_LE(result.trace[i], result.trace[i - 1]);
      EXPECT_EQ(result.trace.back(), result.r_star);
    }
  }
}

TEST(Median, MinimiserAtAFocus) {
  const SumField field(Space::continuum(2, Metric::l2()),
                       std::vector<Point>{Point{2.0, 0.0}, Point{0.0, 0.0}, Point{0.0, 3.0}, Point{-2.0, 0.0}});
  const MedianResult result = min_radius(field);
  EXPECT_NEAR(result.r_star, 7.0, 1e-9);
  EXPECT_NEAR(result.argmin[0], 0.0, 1e-9);
  EXPECT_NEAR(result.argmin[1], 0.0, 1e-9);
}

TEST(Median, KnownValues) {
  const SumField l1(Space::continuum(2, Metric::l1()),
                    std::vector<Point>{Point{1.0, 0.0}, Point{0.0, 0.0}, Point{0.0, 1.0}});
  EXPECT_NEAR(min_radius(l1).r_star, 2.0, 1e-9);
  const SumField linf(Space::continuum(2, Metric::linf()),
                      std::vector<Point>{Point{1.0, 0.0}, Point{0.0, 0.0}, Point{0.0, 1.0}});
  EXPECT_NEAR(min_radius(linf).r_star, 1.5, 1e-9);
  // Equilateral triangle: Fermat point with value sqrt(3) * side.
  const double h = std::sqrt(3.0) / 2;
  const SumField tri(Space::continuum(2, Metric::l2()),
                     std::vector<Point>{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, h}});
  EXPECT_NEAR(min_radius(tri).r_star, std::sqrt(3.0), 1e-9);
  const SumField single(Space::continuum(3, Metric::l2()), std::vector<Point>{Point{1.0, 2.0, 3.0}});
  EXPECT_EQ(min_radius(single).r_star, 0.0);
}

TEST(Median, ExactOnTheLineAndFiniteScan) {
  const SumField line(Space::continuum(1, Metric::l2()),
                      std::vector<ExactPoint>{ExactPoint{Rational(-1)}, ExactPoint{Rational(0)}, ExactPoint{Rational(1)}});
  const MedianResult a = min_radius(line);
  EXPECT_EQ(a.method, MedianMethod::ExactMedian1D);
  EXPECT_EQ(a.r_star, 2.0);
  EXPECT_EQ(a.argmin[0], 0.0);
  std::vector<ExactPoint> pts;
  for (int x : {-4, -1, 0, 1, 2, 18}) pts.push_back(ExactPoint{Rational(x)});
  const SumField finite(Space::finite(pts, Metric::l1()),
                        std::vector<ExactPoint>{ExactPoint{Rational(-1)}, ExactPoint{Rational(18)}});
  const MedianResult b = min_radius(finite);
  EXPECT_EQ(b.method, MedianMethod::FiniteScan);
  EXPECT_EQ(b.r_star, 19.0);
}

TEST(Median, IterationLimitRaisesSolverError) {
  MedianOptions options;
  options.max_iterations = 1;
  const SumField field(Space::continuum(2, Metric::l2()),
                       std::vector<Point>{Point{0.0, 0.0}, Point{4.0, 0.0}, Point{1.0, 3.0}, Point{5.0, 5.0}});
  try {
    min_radius(field, options);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.best_point().size(), 2u);
    EXPECT_TRUE(std::isfinite(e.best_value()));
  }
  EXPECT_THROW(min_radius(SumField(Space::continuum(2, Metric::l1()),
                                   std::vector<Point>{Point{0.0, 0.0}, Point{4.0, 1.0}, Point{1.0, 3.0}}),
                          options),
               SolverError);
}
