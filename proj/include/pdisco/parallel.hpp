#ifndef PDISCO_PARALLEL_HPP
#define PDISCO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace pdisco {

// Chunked parallel loop with thread-count-independent results.
//
// The index range [0, n) is split into fixed-size chunks; worker threads pull
// chunks off an atomic counter and invoke fn(begin, end, chunk_id). Chunk
// boundaries depend only on n and grain, never on the thread count, so a
// caller that writes per-chunk partial results into slot[chunk_id] and then
// reduces the slots in chunk order gets identical output at any thread count.
//
// threads <= 1 runs everything inline on the calling thread.
void parallel_for_chunks(std::size_t n, std::size_t grain, int threads,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t chunk_count(std::size_t n, std::size_t grain);

// Resolve a --threads request: 0 means "use the hardware concurrency".
int resolve_threads(int requested);

}  // namespace pdisco

#endif
