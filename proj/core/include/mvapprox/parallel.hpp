#pragma once

#include <cstddef>
#include <functional>

namespace mvapprox {

/// Worker count: MVAPPROX_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Calls body(i) for i in [0, count). Each index is handled exactly once;
/// results must be written to per-index slots. The first exception thrown
/// by any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mvapprox
