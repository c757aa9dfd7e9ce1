#pragma once

#include <cstddef>
#include <functional>

namespace horoflow {

// Worker count from HOROFLOW_THREADS, capped by the hardware concurrency;
// 1 when unset or invalid.
int thread_count_from_env();

// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be
// written to per-index slots so ordering stays deterministic. The first
// exception thrown by a body is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace horoflow
