#pragma once

#include <cstddef>
#include <functional>

namespace turnpike {

/// Effective worker count: explicit request wins; 0 falls back to the
/// TURNPIKE_THREADS environment variable, then to hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for i in [0, n). Work is split into contiguous blocks; results
/// must be written to caller-owned slots indexed by i so ordering never
/// depends on the thread count. Exceptions propagate to the caller.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace turnpike
