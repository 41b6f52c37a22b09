#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace curvk {

/// Worker count used by every data-parallel sweep. Defaults to 1.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous blocks,
/// one per worker. Callers write results into per-index slots and reduce
/// afterwards, so outputs never depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace curvk
