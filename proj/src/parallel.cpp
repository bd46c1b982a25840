#include "hifst/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace hifst {

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(int begin, int end, int threads,
                     const std::function<void(int, int)>& body) {
  const int span = end - begin;
  if (span <= 0) return;
  threads = std::min(std::max(threads, 1), span);
  if (threads == 1) {
    body(begin, end);
    return;
  }

  const int base = span / threads;
  const int extra = span % threads;
  std::vector<std::thread> workers;
  workers.reserve(threads - 1);
  int cursor = begin;
  for (int t = 0; t < threads; ++t) {
    const int len = base + (t < extra ? 1 : 0);
    const int lo = cursor;
    const int hi = cursor + len;
    cursor = hi;
    if (t + 1 == threads) {
      body(lo, hi);  // run the last chunk on the calling thread
    } else {
      workers.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
  }
  for (auto& w : workers) w.join();
}

}  // namespace hifst
