#ifndef FORGE_PARALLEL_HPP
#define FORGE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace forge {

// Worker count: set_thread_count overrides, otherwise FORGE_DEFAULT_THREADS,
// otherwise the hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs fn(i) for i in [0, n) on the worker pool with a blocked static split.
// Results must be written to disjoint slots so the output is independent of
// scheduling. Exceptions are collected and the first one rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace forge

#endif
