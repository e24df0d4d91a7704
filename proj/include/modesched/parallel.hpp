// Copyright 2026 The modesched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace modesched {

inline int plan_workers(std::int64_t n, int threads) {
  if (n <= 0) return 1;
  return static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), n));
}

inline std::int64_t plan_chunk(std::int64_t n, int workers) {
  return (n + workers - 1) / workers;
}

// Runs fn(begin, end) over a contiguous partition of [0, n) on up to
// `threads` workers. Results must be written to per-index slots (or reduced
// with a total order) so the outcome is independent of the worker count.
template <typename Fn>
void parallel_chunks(std::int64_t n, int threads, Fn&& fn) {
  if (n <= 0) return;
  const int workers = plan_workers(n, threads);
  if (workers == 1) {
    fn(std::int64_t{0}, n);
    return;
  }
  const std::int64_t chunk = plan_chunk(n, workers);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min<std::int64_t>(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end]() { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace modesched
