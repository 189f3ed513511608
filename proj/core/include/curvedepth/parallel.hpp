#pragma once

#include <cstddef>
#include <functional>

namespace curvedepth {

/// Worker count: CURVE_DEPTH_THREADS when set (0 = auto), hardware
/// concurrency otherwise.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Results must be written to per-index slots by
/// the callable; callers then reduce serially in index order, so output is
/// identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace curvedepth
