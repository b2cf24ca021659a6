#pragma once

#include <cstddef>
#include <functional>

namespace apdist {

int worker_threads();
void set_worker_threads(int n);  // n <= 0 restores the hardware default

/// Runs fn(i) for i in [0, n). Each index must write only to its own output
/// slot; with that discipline results are identical at every thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace apdist
