#pragma once

#include <cstdint>
#include <functional>

namespace rootbias {

/// Runs body(i) for every i in [first, last] on up to `jobs` threads
/// (0 = hardware concurrency).  Indices are handed out dynamically; callers
/// write results into per-index slots so the merge order is fixed.  The
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::uint64_t first, std::uint64_t last, unsigned jobs,
                  const std::function<void(std::uint64_t)>& body);

unsigned default_jobs();

}  // namespace rootbias
