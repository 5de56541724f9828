#pragma once

#include <cstddef>
#include <functional>

namespace bdharq {

// 0 means "use the hardware concurrency"; the result is always >= 1.
unsigned resolve_thread_count(unsigned requested);

// Splits [0, count) into one contiguous block per worker and runs
// fn(block_index, begin, end) on each. fn must only write state owned by its
// block; blocks are joined before returning. Runs inline when a single
// worker suffices.
void parallel_blocks(std::size_t count, unsigned threads,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn);

}  // namespace bdharq
