#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "kellipse/kellipse.hpp"
#include "kellipse/trace.hpp"

namespace kellipse {

/// Points at which the conditions are checked, split by membership in the
/// ellipse. Exact plans (Rational) are used on finite spaces and on the
/// line; sampled plans (double) on continua of dimension >= 2.
template <class S>
struct BasicSamplePlan {
  std::vector<BasicPoint<S>> on_ellipse;
  std::vector<BasicPoint<S>> off_ellipse;
  std::uint64_t seed = 0;
  bool on_exhaustive = false;   // on_ellipse is the whole level set
  bool off_exhaustive = false;  // off_ellipse is the whole complement
  double on_tol = 1e-6;         // classification tolerance of sampled plans

  bool exhaustive() const noexcept { return on_exhaustive && off_exhaustive; }
  std::size_t size() const noexcept { return on_ellipse.size() + off_ellipse.size(); }
};

using ExactPlan = BasicSamplePlan<Rational>;
using SampledPlan = BasicSamplePlan<double>;
using SamplePlan = std::variant<ExactPlan, SampledPlan>;

struct GridSpec {
  Rational lo, hi;
  std::size_t count;  // evenly spaced points, both ends included
};

struct PlanConfig {
  std::uint64_t seed = 0;
  /// Off-ellipse Halton samples in the trace box (dimension >= 2).
  std::size_t off_count = 512;
  /// Extra seeded dyadic off-ellipse samples on the line.
  std::size_t random_count = 64;
  /// Off-ellipse grid on the line; defaults to [min focus - r - 1, max focus + r + 1]
  /// with 401 points.
  std::optional<GridSpec> grid;
  std::vector<ExactPoint> extra_off;
  double on_tol = 1e-6;
  /// Box and resolution for on-ellipse sampling in dimension >= 2; the box
  /// defaults to one that strictly contains the ellipse.
  std::optional<TraceConfig> trace;
  int default_resolution = 128;
};

/// Box guaranteed to contain the level set: every member is within r of each
/// focus in every coordinate. Padded by 5%.
TraceConfig default_trace_box(const KEllipse& e, int resolution);

/// The default plan for the ellipse: exhaustive and exact on finite spaces;
/// exact on the line (the level set is solved exactly, the complement is
/// sampled on a grid); trace vertices plus Halton points elsewhere.
SamplePlan build_plan(const KEllipse& e, const PlanConfig& config = {});

/// ArgumentError unless every on-ellipse sample classifies On, every
/// off-ellipse sample does not, and all samples belong to the space.
void validate_plan(const ExactPlan& plan, const KEllipse& e);
void validate_plan(const SampledPlan& plan, const KEllipse& e);

/// Van der Corput radical inverse of `index` in `base`, as an exact rational.
Rational radical_inverse(std::uint64_t index, unsigned base);

}  // namespace kellipse
