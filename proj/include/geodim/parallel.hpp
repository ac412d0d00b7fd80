#pragma once

#include <cstddef>
#include <functional>

namespace geodim {

// Worker cap shared by every parallel loop. Defaults to the GEODIM_THREADS
// environment variable when set, otherwise hardware concurrency. All loops
// in this project produce output that is independent of the cap.
int thread_cap();
void set_thread_cap(int n);

// Static block partition of [begin, end). fn(i) must only write state that
// belongs to index i; no ordering between iterations is guaranteed.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

} // namespace geodim
