#pragma once

#include <cstddef>
#include <functional>

namespace linkexpr {

/// Worker count used by the parallel loops: set_worker_count() if called,
/// otherwise LINKEXPR_THREADS, otherwise hardware concurrency.
std::size_t worker_count();
void set_worker_count(std::size_t n);

/// Calls body(i) for i in [0, count) across the workers. Results must be
/// written to per-index slots; the exception from the lowest failing index is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace linkexpr
