#pragma once

#include <cstddef>
#include <functional>

namespace bnslab {

// Worker cap for internal loops; 1 runs everything on the caller's thread.
void set_thread_count(int n);
int thread_count();

// Calls fn(i) for i in [0, count) using up to thread_count() threads.  Each
// index is handled exactly once; callers write to disjoint outputs, so the
// results do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace bnslab
