#ifndef BALLSHAPE_PARALLEL_HPP
#define BALLSHAPE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace ballshape {

// Worker cap shared by all internally parallel loops. Resolution order:
// set_thread_count() (CLI --threads), then BALLSHAPE_THREADS, then
// hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Static block partition of [begin, end). Each index is processed exactly
// once; callers must write to disjoint slots so results are deterministic
// regardless of the worker count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace ballshape

#endif  // BALLSHAPE_PARALLEL_HPP
