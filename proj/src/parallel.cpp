#include "ballshape/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ballshape {

namespace {
std::atomic<int> g_thread_count{0};

int resolve_thread_count() {
  int n = g_thread_count.load();
  if (n > 0) return n;
  if (const char* env = std::getenv("BALLSHAPE_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

void set_thread_count(int n) { g_thread_count.store(n); }

int thread_count() { return resolve_thread_count(); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t n = end > begin ? end - begin : 0;
  const int workers = thread_count();
  if (n == 0) return;
  if (workers <= 1 || n < 64) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  const std::size_t w = static_cast<std::size_t>(workers);
  const std::size_t chunk = (n + w - 1) / w;
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t lo = begin + t * chunk;
    if (lo >= end) break;
    const std::size_t hi = std::min(end, lo + chunk);
    threads.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : threads) th.join();
}

}  // namespace ballshape
