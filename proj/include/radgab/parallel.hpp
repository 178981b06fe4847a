#pragma once

#include <cstddef>
#include <functional>

namespace radgab {

/// Number of worker threads used by parallel_for. Defaults to the hardware
/// concurrency, capped by the RADIAL_GABOR_THREADS environment variable.
std::size_t worker_count();

/// Overrides worker_count() for the rest of the process (0 restores default).
void set_worker_count(std::size_t n);

/// Runs body(i) for i in [0, n). Indices are split into contiguous blocks, one
/// per worker; body must only write to slots owned by i, so results do not
/// depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace radgab
