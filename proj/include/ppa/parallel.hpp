#pragma once

#include <cstddef>
#include <functional>

namespace ppa {

// Worker count: PPA_THREADS if set and positive, otherwise hardware
// concurrency. PPA_THREADS=0 means auto.
unsigned thread_count();

// Runs body(begin, end) over disjoint chunks of [0, n). Results must be
// written by index; no ordering between chunks is implied.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 256);

}  // namespace ppa
