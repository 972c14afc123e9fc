#pragma once

#include <cstddef>
#include <functional>

namespace ssmseg {

// Worker count: SSMSEG_THREADS env var, 0 or unset = hardware concurrency.
int worker_count();

// Static block partition of [0, n). Each index is visited exactly once;
// callers must write to disjoint locations so results match a serial run.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ssmseg
