#pragma once

#include <cstddef>
#include <functional>

namespace wn {

// Worker count for data-parallel loops: WIENERCERT_THREADS if set (>=1),
// otherwise the hardware concurrency, never more than `limit`.
std::size_t worker_count(std::size_t limit);

// Runs fn(i) for i in [0, n). Splits into contiguous blocks across workers;
// with one worker (or tiny n) it degenerates to a plain loop. fn must write
// only to slot i of any shared output, so the result is order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wn
