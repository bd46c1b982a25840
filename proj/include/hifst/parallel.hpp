#pragma once

#include <functional>

namespace hifst {

// Maps the configured thread-count setting to an actual worker count:
// values <= 0 mean "auto" (hardware concurrency, at least 1).
int resolve_thread_count(int requested);

// Splits [begin, end) into at most `threads` contiguous chunks and runs
// `body(chunk_begin, chunk_end)` on each, in parallel. Chunk boundaries never
// affect results for the per-row/per-pixel work in this library, so outputs
// are identical for any worker count.
void parallel_chunks(int begin, int end, int threads,
                     const std::function<void(int, int)>& body);

}  // namespace hifst
