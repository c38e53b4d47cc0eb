#ifndef MTSAD_PARALLEL_HPP
#define MTSAD_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mtsad {

/// Number of worker threads to use, from the MTS_THREADS environment
/// variable. "0" or unset means hardware concurrency. Re-read on every call
/// so tests can override it.
std::size_t worker_threads();

/// Runs fn(i) for i in [0, count) on up to worker_threads() threads with a
/// static block partition. Callers must make fn(i) write only to slot i so
/// results are independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace mtsad

#endif
