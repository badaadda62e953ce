#pragma once

#include <cstdint>
#include <functional>

namespace hpf {

/// Number of workers implied by the HPF_THREADS environment variable,
/// or 1 when unset/invalid.
int default_thread_count();

/// Splits [0, total) into `threads` contiguous chunks and runs
/// fn(chunk_index, begin, end) on a persistent worker pool.  Chunk
/// boundaries depend only on (total, threads), so callers that merge
/// per-chunk results in chunk order get schedule-independent output.
/// threads <= 1 runs inline.
void parallel_for_chunks(std::int64_t total, int threads,
                         const std::function<void(int, std::int64_t, std::int64_t)>& fn);

}  // namespace hpf
