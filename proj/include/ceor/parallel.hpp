#pragma once

#include <cstddef>
#include <functional>

namespace ceor {

// 0 means "use the hardware count".
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs fn(i) for i in [0, count). Work is chunked over threads; fn must be
// safe to call concurrently for distinct i and must write results only into
// slot i. The first exception thrown by any worker is rethrown here.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ceor
