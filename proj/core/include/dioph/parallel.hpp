#ifndef DIOPH_PARALLEL_HPP
#define DIOPH_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace dioph::util {

// Splits [0, total) into contiguous shards, one worker thread per shard.
// Callers merge shard results in index order, which keeps every parallel
// reduction deterministic regardless of the worker count.
template <typename Fn>
void parallel_shards(size_t total, int workers, Fn&& fn) {
  if (workers < 1) workers = 1;
  size_t w = std::min<size_t>(static_cast<size_t>(workers), total == 0 ? 1 : total);
  if (w <= 1) {
    fn(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  size_t chunk = (total + w - 1) / w;
  for (size_t s = 0; s < w; ++s) {
    size_t b = s * chunk, e = std::min(total, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, s, b, e] { fn(s, b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dioph::util

#endif
