#include "kellipse/trace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "kellipse/parallel.hpp"

namespace kellipse {

void TraceConfig::validate(std::size_t dimension) const {
  if (lo.size() != dimension || hi.size() != dimension) {
    throw ArgumentError("bounding box must have " + std::to_string(dimension) + " axes");
  }
  for (std::size_t i = 0; i < dimension; ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(hi[i] > lo[i])) {
      throw ArgumentError("bounding box needs positive extent on every axis");
    }
  }
  if (resolution < 8 || resolution > 4096) {
    throw ArgumentError("resolution must lie in [8, 4096]");
  }
  if (!(refine_tol > 0.0)) {
    throw ArgumentError("refine_tol must be > 0");
  }
}

namespace {

void require_continuum(const KEllipse& e, std::size_t dimension) {
  if (e.space().is_finite() || e.space().is_mixed() || e.space().dimension() != dimension) {
    throw ArgumentError("tracing needs a " + std::to_string(dimension) + "D continuum");
  }
}

// Bisection between a and b, where g(a) and g(b) have opposite signs.
// Returns the probed point with the smallest residual.
template <std::size_t N, class G>
std::array<double, N> bisect(std::array<double, N> a, double ga, std::array<double, N> b, double gb, double tol,
                             const G& g) {
  std::array<double, N> best = std::abs(ga) <= std::abs(gb) ? a : b;
  double best_residual = std::min(std::abs(ga), std::abs(gb));
  for (int it = 0; it < kBisectionIterations && best_residual > tol; ++it) {
    std::array<double, N> m;
    for (std::size_t i = 0; i < N; ++i) m[i] = 0.5 * (a[i] + b[i]);
    const double gm = g(m);
    if (std::abs(gm) < best_residual) {
      best_residual = std::abs(gm);
      best = m;
    }
    if ((gm > 0.0) == (ga > 0.0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
      gb = gm;
    }
  }
  return best;
}

}  // namespace

TraceResult trace_2d(const KEllipse& e, const TraceConfig& cfg) {
  require_continuum(e, 2);
  if (!(e.radius() > 0.0)) {
    throw ArgumentError("trace_2d needs r > 0");
  }
  cfg.validate(2);
  const SumField& field = e.field();
  const double r = e.radius();
  const std::size_t n = static_cast<std::size_t>(cfg.resolution);
  const std::size_t stride = n + 1;
  const double hx = cfg.cell_size(0), hy = cfg.cell_size(1);
  auto coord = [&](std::size_t i, std::size_t j) {
    return std::array<double, 2>{cfg.lo[0] + static_cast<double>(i) * hx, cfg.lo[1] + static_cast<double>(j) * hy};
  };
  auto g = [&](const std::array<double, 2>& p) { return field(Point{p[0], p[1]}) - r; };

  const std::size_t workers = worker_count(cfg.threads);
  std::vector<double> values(stride * stride);
  parallel_for(stride, workers, [&](std::size_t j0, std::size_t j1) {
    for (std::size_t j = j0; j < j1; ++j)
      for (std::size_t i = 0; i < stride; ++i) values[j * stride + i] = g(coord(i, j));
  });
  auto positive = [&](std::size_t i, std::size_t j) { return values[j * stride + i] > 0.0; };

  // Horizontal edge (i,j)-(i+1,j) has id j*n + i; vertical edge (i,j)-(i,j+1)
  // has id h_count + j*(n+1) + i.
  const std::size_t h_count = stride * n;
  auto h_edge = [&](std::size_t i, std::size_t j) { return j * n + i; };
  auto v_edge = [&](std::size_t i, std::size_t j) { return h_count + j * stride + i; };

  std::vector<std::vector<std::size_t>> row_edges(stride);
  parallel_for(stride, workers, [&](std::size_t j0, std::size_t j1) {
    for (std::size_t j = j0; j < j1; ++j) {
      for (std::size_t i = 0; i < stride; ++i) {
        if (i < n && positive(i, j) != positive(i + 1, j)) row_edges[j].push_back(h_edge(i, j));
        if (j < n && positive(i, j) != positive(i, j + 1)) row_edges[j].push_back(v_edge(i, j));
      }
    }
  });
  std::vector<std::size_t> crossing_edges;
  for (auto& row : row_edges) crossing_edges.insert(crossing_edges.end(), row.begin(), row.end());

  TraceResult result;
  std::vector<std::array<double, 2>> crossing_points(crossing_edges.size());
  parallel_for(crossing_edges.size(), workers, [&](std::size_t b, std::size_t end) {
    for (std::size_t c = b; c < end; ++c) {
      const std::size_t id = crossing_edges[c];
      std::size_t i0, j0, i1, j1;
      if (id < h_count) {
        j0 = j1 = id / n;
        i0 = id % n;
        i1 = i0 + 1;
      } else {
        const std::size_t local = id - h_count;
        j0 = local / stride;
        j1 = j0 + 1;
        i0 = i1 = local % stride;
      }
      crossing_points[c] = bisect<2>(coord(i0, j0), values[j0 * stride + i0], coord(i1, j1),
                                     values[j1 * stride + i1], cfg.refine_tol, g);
    }
  });
  std::unordered_map<std::size_t, std::size_t> slot_of;
  slot_of.reserve(crossing_edges.size());
  for (std::size_t c = 0; c < crossing_edges.size(); ++c) {
    const std::size_t id = crossing_edges[c];
    slot_of[id] = c;
    bool on_border;
    if (id < h_count) {
      const std::size_t j = id / n;
      on_border = j == 0 || j == n;
    } else {
      const std::size_t i = (id - h_count) % stride;
      on_border = i == 0 || i == n;
    }
    result.touches_boundary = result.touches_boundary || on_border;
  }

  // Segments per cell, in row-major cell order.
  std::vector<std::array<std::size_t, 2>> segments;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned index = (positive(i, j) ? 1u : 0u) | (positive(i + 1, j) ? 2u : 0u) |
                             (positive(i + 1, j + 1) ? 4u : 0u) | (positive(i, j + 1) ? 8u : 0u);
      if (index == 0 || index == 15) continue;
      const std::array<std::size_t, 4> edge{h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
      auto add = [&](int a, int b) { segments.push_back({edge[a], edge[b]}); };
      switch (index) {
        case 1: case 14: add(3, 0); break;
        case 2: case 13: add(0, 1); break;
        case 3: case 12: add(3, 1); break;
        case 4: case 11: add(1, 2); break;
        case 6: case 9: add(0, 2); break;
        case 7: case 8: add(3, 2); break;
        case 5:
        case 10: {
          const auto c0 = coord(i, j);
          const bool centre_positive = g({c0[0] + 0.5 * hx, c0[1] + 0.5 * hy}) > 0.0;
          // Corners sharing the centre's sign are joined through the cell.
          const bool isolate_even = (index == 5) != centre_positive;  // cut off corners 0 and 2
          if (isolate_even) {
            add(3, 0);
            add(1, 2);
          } else {
            add(0, 1);
            add(2, 3);
          }
          break;
        }
        default: break;
      }
    }
  }

  // Stitch segments sharing an edge (each edge joins at most two cells).
  std::unordered_map<std::size_t, std::array<long, 2>> at_edge;
  at_edge.reserve(2 * segments.size());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::size_t end : segments[s]) {
      auto [it, inserted] = at_edge.try_emplace(end, std::array<long, 2>{-1, -1});
      (it->second[0] < 0 ? it->second[0] : it->second[1]) = static_cast<long>(s);
    }
  }
  std::vector<char> used(segments.size(), 0);
  auto next_segment = [&](std::size_t edge_id, std::size_t from) -> long {
    const auto& pair = at_edge.at(edge_id);
    for (long s : pair) {
      if (s >= 0 && static_cast<std::size_t>(s) != from && !used[static_cast<std::size_t>(s)]) return s;
    }
    return -1;
  };
  auto walk = [&](std::size_t segment, std::size_t edge_id, std::vector<std::size_t>& chain) {
    std::size_t current = segment;
    for (;;) {
      const long s = next_segment(edge_id, current);
      if (s < 0) return;
      current = static_cast<std::size_t>(s);
      used[current] = 1;
      const auto& seg = segments[current];
      edge_id = seg[0] == edge_id ? seg[1] : seg[0];
      chain.push_back(edge_id);
    }
  };

  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    used[s] = 1;
    std::vector<std::size_t> forward{segments[s][0], segments[s][1]};
    walk(s, segments[s][1], forward);
    bool closed = forward.size() > 2 && forward.back() == forward.front();
    if (closed) {
      forward.pop_back();
    } else {
      std::vector<std::size_t> backward;
      walk(s, segments[s][0], backward);
      std::reverse(backward.begin(), backward.end());
      backward.insert(backward.end(), forward.begin(), forward.end());
      forward = std::move(backward);
    }

    Polyline line;
    line.closed = closed;
    for (std::size_t edge_id : forward) {
      const auto& p = crossing_points[slot_of.at(edge_id)];
      Point v{p[0], p[1]};
      if (!line.vertices.empty() && nearly_equal(line.vertices.back(), v)) continue;
      line.vertices.push_back(std::move(v));
    }
    if (line.closed && line.vertices.size() > 1 && nearly_equal(line.vertices.front(), line.vertices.back())) {
      line.vertices.pop_back();
    }
    if (line.vertices.size() < 2) continue;
    if (!line.closed) result.touches_boundary = true;
    result.polylines.push_back(std::move(line));
  }
  return result;
}

CloudResult sample_3d(const KEllipse& e, const TraceConfig& cfg) {
  require_continuum(e, 3);
  cfg.validate(3);
  const SumField& field = e.field();
  const double r = e.radius();
  const std::size_t n = static_cast<std::size_t>(cfg.resolution);
  const std::size_t stride = n + 1;
  const std::array<double, 3> h{cfg.cell_size(0), cfg.cell_size(1), cfg.cell_size(2)};
  auto coord = [&](std::size_t i, std::size_t j, std::size_t k) {
    return std::array<double, 3>{cfg.lo[0] + static_cast<double>(i) * h[0], cfg.lo[1] + static_cast<double>(j) * h[1],
                                 cfg.lo[2] + static_cast<double>(k) * h[2]};
  };
  auto g = [&](const std::array<double, 3>& p) { return field(Point{p[0], p[1], p[2]}) - r; };
  auto fill_slice = [&](std::size_t k, std::vector<double>& slice) {
    slice.resize(stride * stride);
    for (std::size_t j = 0; j < stride; ++j)
      for (std::size_t i = 0; i < stride; ++i) slice[j * stride + i] = g(coord(i, j, k));
  };

  const std::size_t workers = worker_count(cfg.threads);
  std::vector<std::vector<std::array<double, 3>>> per_worker(workers);
  std::vector<char> border_hit(workers, 0);
  const std::size_t chunk = (stride + workers - 1) / workers;
  parallel_for(workers, workers, [&](std::size_t w0, std::size_t w1) {
    for (std::size_t w = w0; w < w1; ++w) {
      const std::size_t k_begin = w * chunk;
      const std::size_t k_end = std::min(stride, k_begin + chunk);
      std::vector<double> below, above;
      if (k_begin < k_end) fill_slice(k_begin, below);
      for (std::size_t k = k_begin; k < k_end; ++k) {
        if (k < n) fill_slice(k + 1, above);
        auto emit = [&](std::array<double, 3> a, double ga, std::array<double, 3> b, double gb, bool border) {
          if ((ga > 0.0) == (gb > 0.0)) return;
          per_worker[w].push_back(bisect<3>(a, ga, b, gb, cfg.refine_tol, g));
          if (border) border_hit[w] = 1;
        };
        const bool k_border = k == 0 || k == n;
        for (std::size_t j = 0; j < stride; ++j) {
          for (std::size_t i = 0; i < stride; ++i) {
            const double v = below[j * stride + i];
            const bool i_border = i == 0 || i == n;
            const bool j_border = j == 0 || j == n;
            if (i < n) emit(coord(i, j, k), v, coord(i + 1, j, k), below[j * stride + i + 1], j_border || k_border);
            if (j < n) emit(coord(i, j, k), v, coord(i, j + 1, k), below[(j + 1) * stride + i], i_border || k_border);
            if (k < n) emit(coord(i, j, k), v, coord(i, j, k + 1), above[j * stride + i], i_border || j_border);
          }
        }
        std::swap(below, above);
      }
    }
  });

  CloudResult result;
  for (std::size_t w = 0; w < workers; ++w) {
    for (const auto& p : per_worker[w]) result.points.push_back(Point{p[0], p[1], p[2]});
    result.touches_boundary = result.touches_boundary || border_hit[w];
  }
  return result;
}

double arc_length(const std::vector<Polyline>& polylines) {
  double total = 0.0;
  for (const auto& line : polylines) {
    const auto& v = line.vertices;
    for (std::size_t i = 1; i < v.size(); ++i) total += std::hypot(v[i][0] - v[i - 1][0], v[i][1] - v[i - 1][1]);
    if (line.closed && v.size() > 2) total += std::hypot(v.front()[0] - v.back()[0], v.front()[1] - v.back()[1]);
  }
  return total;
}

}  // namespace kellipse
