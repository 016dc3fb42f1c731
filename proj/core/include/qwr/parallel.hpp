#pragma once

#include <cstddef>
#include <functional>

namespace qwr {

/// Worker count from QWR_THREADS (default 1, clamped to hardware concurrency).
std::size_t thread_count();

/// Runs fn(i) for i in [0, count) on up to thread_count() threads. Results
/// must be written to per-index slots so the outcome is schedule-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn);

}  // namespace qwr
