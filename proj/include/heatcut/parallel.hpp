#pragma once

#include <cstdint>
#include <functional>

namespace heatcut {

/// Maximum worker threads for parallel loops. 0 selects hardware concurrency.
void set_max_threads(int threads);
int max_threads();

/// Runs fn(chunk_index, begin, end) over a fixed partition of [0, count) using
/// up to max_threads() workers. The partition depends only on count, never on
/// the thread count, so chunk-indexed reductions are reproducible.
void parallel_chunks(std::int64_t count,
                     const std::function<void(int chunk, std::int64_t begin, std::int64_t end)>& fn,
                     int* chunks_out = nullptr);

/// Number of chunks parallel_chunks will use for a given count.
int chunk_count(std::int64_t count);

}  // namespace heatcut
