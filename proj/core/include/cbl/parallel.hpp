#pragma once

#include <cstddef>
#include <functional>

namespace cbl {

/// Worker count: CBL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `threads`
/// threads. Chunk boundaries depend only on n and threads. The first
/// exception thrown by a worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  unsigned threads = thread_count());

}  // namespace cbl
