#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace cq {

/// Worker concurrency: hardware threads, capped by the CQ_THREADS env var.
int worker_count();

/// Runs fn(chunk_index, begin, end) over [0, total) split into `chunks`
/// contiguous blocks, pulled by a small worker pool. Chunk indices let the
/// caller merge per-chunk results in a deterministic order.
template <class Fn>
void parallel_chunks(std::int64_t total, int chunks, Fn&& fn) {
  if (total <= 0) return;
  if (chunks < 1) chunks = 1;
  const int workers = std::min<std::int64_t>(worker_count(), std::min<std::int64_t>(chunks, total));
  const std::int64_t step = (total + chunks - 1) / chunks;
  if (workers <= 1) {
    for (int c = 0; c * step < total; ++c)
      fn(c, c * step, std::min<std::int64_t>(total, (c + 1) * step));
    return;
  }
  std::atomic<int> next{0};
  auto run = [&] {
    for (;;) {
      const int c = next.fetch_add(1);
      const std::int64_t begin = std::int64_t(c) * step;
      if (begin >= total) return;
      fn(c, begin, std::min<std::int64_t>(total, begin + step));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace cq
