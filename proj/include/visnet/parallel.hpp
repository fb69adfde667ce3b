#pragma once

#include <cstddef>
#include <functional>

namespace visnet {

// Runs fn(0..n-1) on up to `jobs` worker threads (serially for jobs <= 1).
// Tasks must write to disjoint state; any scheduling yields the same result.
// The first exception thrown by a task is rethrown on the caller.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace visnet
