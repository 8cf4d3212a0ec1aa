#ifndef INDICATRIX_PARALLEL_HPP
#define INDICATRIX_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace indicatrix {

// Thread cap: min(hardware, INDICATRIX_THREADS). Defaults to hardware.
std::size_t thread_count();

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed chunks.
// Chunk boundaries depend only on n, never on the thread count, so any
// chunk-indexed reduction the caller performs is deterministic.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace indicatrix

#endif
