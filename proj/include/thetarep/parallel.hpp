#pragma once

#include <cstddef>
#include <functional>

namespace thetarep {

/// Worker count used by grid evaluations.  Defaults to THETAREP_THREADS from
/// the environment, else 1.
int thread_count();
void set_thread_count(int n);

/// Calls body(i) for i in [0, n), split into contiguous blocks across
/// thread_count() workers.  Each index is handled by exactly one worker, so
/// writing results to slot i and reducing afterwards in index order gives
/// output that does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace thetarep
