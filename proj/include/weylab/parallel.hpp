#pragma once

#include <cstddef>
#include <functional>

namespace weylab {

// Worker count: hardware concurrency, capped by WEYLAB_THREADS when set.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Indices are
/// split into contiguous blocks; fn must only write to slot i of its output.
/// The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace weylab
