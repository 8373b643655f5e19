// SPDX-License-Identifier: Apache-2.0
//
// Minimal data-parallel helper. Work is split into contiguous chunks, one
// per worker. Callers must only write per-index state so the partition has
// no effect on results; everything in this library stays bit-deterministic
// for any thread count.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace eimkit {

// Normalizes a requested worker count: values < 1 mean "one worker".
inline int resolve_thread_count(int requested) {
  return requested < 1 ? 1 : requested;
}

template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
  threads = resolve_thread_count(threads);
  if (n <= 0) return;
  const long workers = std::min<long>(threads, n);
  if (workers == 1) {
    fn(0L, n);
    return;
  }
  const long chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (long w = 0; w < workers; ++w) {
    const long begin = w * chunk;
    const long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace eimkit
