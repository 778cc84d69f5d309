// Fixed-size worker fan-out over an index range.
#pragma once

#include <cstddef>
#include <functional>

namespace spares {

/// Worker count for a --jobs style request; 0 means hardware concurrency.
unsigned resolve_jobs(unsigned requested);

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. Each index is
/// processed exactly once; callers write results by index so the outcome is
/// independent of scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace spares
