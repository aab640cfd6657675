#pragma once

#include <cstddef>
#include <functional>

namespace kellipse {

/// Worker count: `requested` if nonzero, else the hardware concurrency,
/// capped by the KELLIPSE_THREADS environment variable when set.
std::size_t worker_count(std::size_t requested = 0);

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. Chunk boundaries depend only on n and the
/// worker count; callers write to disjoint slots.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace kellipse
