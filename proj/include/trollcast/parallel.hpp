#pragma once

#include <cstddef>
#include <functional>

namespace trollcast {

// Process-wide worker cap, set once by the CLI's --threads flag.
// Every parallel region must produce results independent of this value.
void set_max_threads(int n);
int max_threads();

// Runs fn(begin, end) over disjoint chunks of [0, n). Chunking depends only
// on n and the thread cap, never on scheduling, so any chunk-local results
// can be merged in index order deterministically.
void parallel_chunks(size_t n, const std::function<void(size_t, size_t)>& fn);

// Convenience: fn(i) for each i in [0, n), element-wise.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace trollcast
