#pragma once

#include <cstddef>
#include <functional>

namespace scv {

/// Worker count: SCV_WORKERS when set to a positive integer, else the hardware concurrency.
std::size_t worker_count();

/// Runs task(i) for every i in [0, count) on up to worker_count() threads. Tasks must
/// write only to their own slot of any shared output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace scv
