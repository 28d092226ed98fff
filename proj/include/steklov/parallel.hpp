#pragma once

#include <functional>

namespace steklov {

// Worker count: set_thread_count if called with n > 0, else STEKLOV_THREADS, else hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, count) over contiguous static chunks; each index is visited once,
// so results written to disjoint slots are independent of the thread count.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace steklov
