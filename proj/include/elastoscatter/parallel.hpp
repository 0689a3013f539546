#pragma once

#include <cstddef>
#include <functional>

namespace elastoscatter {

/// Worker count: ELASTOSCATTER_THREADS if set to a positive integer, else the
/// hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n) over contiguous chunks. Each index must write
/// only its own outputs; results are then independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace elastoscatter
