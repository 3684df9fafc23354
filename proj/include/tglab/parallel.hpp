#pragma once

#include <cstddef>
#include <functional>

namespace tglab {

// Worker count: TGLAB_THREADS if set and positive, else the hardware concurrency.
std::size_t thread_budget();

// Runs fn(i) for i < n on up to thread_budget() threads; fn must only write to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace tglab
