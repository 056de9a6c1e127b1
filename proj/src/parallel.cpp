#include "heatcut/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace heatcut {

namespace {
std::atomic<int> g_max_threads{0};
constexpr int kChunksPerRun = 64;
}  // namespace

void set_max_threads(int threads) { g_max_threads.store(threads < 0 ? 0 : threads); }

int max_threads() {
  int t = g_max_threads.load();
  if (t == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    t = hw == 0 ? 1 : static_cast<int>(hw);
  }
  return std::max(1, t);
}

int chunk_count(std::int64_t count) {
  if (count <= 0) return 0;
  return static_cast<int>(std::min<std::int64_t>(count, kChunksPerRun));
}

void parallel_chunks(std::int64_t count,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn,
                     int* chunks_out) {
  const int chunks = chunk_count(count);
  if (chunks_out) *chunks_out = chunks;
  if (chunks == 0) return;

  auto chunk_range = [&](int c) {
    std::int64_t begin = count * c / chunks;
    std::int64_t end = count * (c + 1) / chunks;
    return std::pair{begin, end};
  };

  const int workers = std::min(max_threads(), chunks);
  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c) {
      auto [b, e] = chunk_range(c);
      fn(c, b, e);
    }
    return;
  }

  std::atomic<int> next{0};
  auto work = [&] {
    for (;;) {
      int c = next.fetch_add(1);
      if (c >= chunks) return;
      auto [b, e] = chunk_range(c);
      fn(c, b, e);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

}  // namespace heatcut
