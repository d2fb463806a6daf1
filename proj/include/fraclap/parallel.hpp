#pragma once

#include <cstddef>
#include <functional>

namespace fraclap {

// Static-partition fan-out over [0, n).  Worker count comes from
// FRACLAP_THREADS (0 or unset = hardware concurrency).  Each index writes its
// own result slot, so output is independent of the partitioning.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

int worker_count();

}  // namespace fraclap
