#pragma once

#include <cstddef>
#include <functional>

namespace ak {

/// Number of worker threads. Honors AK_THREADS when it parses as a positive
/// integer, otherwise falls back to the hardware concurrency.
std::size_t thread_count();

/// Calls body(i) exactly once for every i in [0, n). Callers write results
/// into per-index slots and reduce serially afterwards, so outputs do not
/// depend on scheduling. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ak
