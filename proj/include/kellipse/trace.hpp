#pragma once

#include <cstddef>
#include <vector>

#include "kellipse/kellipse.hpp"

namespace kellipse {

/// Sampling grid for curve/surface extraction.
struct TraceConfig {
  std::vector<double> lo;  // per-axis lower corner
  std::vector<double> hi;  // per-axis upper corner
  int resolution = 256;    // cells per axis, in [8, 4096]
  double refine_tol = 1e-9;
  std::size_t threads = 0;  // 0: automatic (see worker_count)

  /// ArgumentError unless the box has `dimension` axes of positive extent
  /// and the resolution and tolerance are in range.
  void validate(std::size_t dimension) const;
  double cell_size(std::size_t axis) const { return (hi[axis] - lo[axis]) / resolution; }
};

/// Bisection budget per crossing edge.
inline constexpr int kBisectionIterations = 60;

struct Polyline {
  std::vector<Point> vertices;
  bool closed = false;
};

struct TraceResult {
  std::vector<Polyline> polylines;
  /// The level set reaches the bounding box; the trace is clipped there.
  bool touches_boundary = false;
};

struct CloudResult {
  std::vector<Point> points;
  bool touches_boundary = false;
};

/// Marching squares over the grid of xi - r, each crossing edge refined by
/// bisection, segments stitched into polylines. Saddle cells are resolved by
/// the field value at the cell centre. Output is independent of the worker
/// count.
TraceResult trace_2d(const KEllipse& e, const TraceConfig& cfg);

/// Bisection-refined crossing point of every grid edge with a sign change
/// of xi - r: an unstructured cloud on the surface.
CloudResult sample_3d(const KEllipse& e, const TraceConfig& cfg);

/// Total length of all polylines (closing segments included).
double arc_length(const std::vector<Polyline>& polylines);

}  // namespace kellipse
