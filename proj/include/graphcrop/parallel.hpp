#pragma once

#include <cstddef>
#include <functional>

namespace graphcrop {

/// Worker count from GRAPHCROP_THREADS, else the hardware concurrency.
/// Always at least 1.
std::size_t default_worker_count();

/// Runs body(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)> &body);

} // namespace graphcrop
