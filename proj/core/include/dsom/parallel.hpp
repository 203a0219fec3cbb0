#pragma once

#include <cstddef>
#include <functional>

namespace dsom::parallel {

/// Process-wide cap on worker threads. 0 restores the hardware default.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(chunk_begin, chunk_end) over a contiguous partition of [begin, end).
/// Chunk boundaries depend only on the range and the thread cap; every caller
/// in this library computes each output element fully inside one chunk, so
/// results do not depend on the number of worker threads.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace dsom::parallel
