// parallel.hpp: bounded worker pool for independent sweep points
#pragma once

#include <cstddef>
#include <functional>

namespace cct {

// Worker count: CCT_NUM_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
// rethrown on the calling thread (the one from the lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

} // namespace cct
