#pragma once

#include <cstddef>
#include <functional>

namespace cwglt {

/// Worker count: CWGLT_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Indices
/// are handed out in contiguous chunks; body must write only to slot i of
/// its outputs so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cwglt
