#pragma once

#include <cstddef>
#include <functional>

namespace contlog {

/// Worker count from CLOG_JOBS, falling back to the hardware thread count.
unsigned default_jobs();

/// Runs body(i) for every i in [0, n) on up to `jobs` threads. Indices are
/// claimed dynamically, so body must only write to slot i of its output.
/// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace contlog
