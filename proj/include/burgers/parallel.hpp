#pragma once

#include <cstddef>
#include <functional>

namespace burgers {

/// Number of worker threads used by parallel loops. Defaults to the value of
/// BURGERS_LAB_THREADS when set, otherwise 1.
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into per-index slots and reduce afterwards in index order,
/// which keeps results independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace burgers
