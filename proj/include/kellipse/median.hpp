#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kellipse/kellipse.hpp"

namespace kellipse {

struct MedianOptions {
  /// Target accuracy of r_star; iterations stop once steps shrink below
  /// tolerance * 1e-3 times the spread of the foci.
  double tolerance = 1e-9;
  std::size_t max_iterations = 10'000;
  bool record_trace = false;
};

enum class MedianMethod { ExactMedian1D, FiniteScan, Weiszfeld, PatternSearch };

const char* to_string(MedianMethod method);

struct MedianResult {
  double r_star;
  Point argmin;
  MedianMethod method;
  std::size_t iterations = 0;
  /// Field value at every accepted iterate when `record_trace` is set.
  std::vector<double> trace;
};

/// Smallest radius with a nonempty k-ellipse and a point attaining it.
///
/// Dimension 1 uses the exact median of the foci. Finite spaces scan their
/// points. L2 runs Weiszfeld's iteration; an iterate that reaches a focus
/// probes the compass directions (plus the steepest one-sided direction) and
/// stops there if none descends. Other metrics run a shrinking-step pattern
/// search from the coordinate-wise median (from the rotated median for Linf
/// in the plane, where the field separates in x+y and x-y).
///
/// Throws SolverError carrying the best iterate after `max_iterations`.
MedianResult min_radius(const SumField& field, const MedianOptions& options = {});

}  // namespace kellipse
