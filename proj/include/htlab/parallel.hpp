// Copyright 2026 The htlab Authors
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

// Fixed-order parallel folds.  Work is cut into chunks whose boundaries depend
// only on the problem size; workers fill per-chunk slots and the caller
// combines the slots in chunk order, so results do not depend on the number
// of threads.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace htlab {

// 0 means std::thread::hardware_concurrency().
void set_thread_count(std::size_t n);
std::size_t thread_count();

inline constexpr std::size_t kDrawsPerChunk = 4096;

inline std::size_t chunk_count(std::size_t n, std::size_t per_chunk = kDrawsPerChunk) {
  return (n + per_chunk - 1) / per_chunk;
}

// Calls fn(i) for every i in [0, n) on the worker pool.  fn must only write
// to storage owned by index i.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(body);
  body();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

// Evaluates fn(chunk) -> Acc for every chunk and merges them left to right.
template <class Acc, class Fn>
Acc fold_chunks(std::size_t n_chunks, Fn&& fn) {
  std::vector<Acc> parts(n_chunks);
  parallel_for(n_chunks, [&](std::size_t c) { parts[c] = fn(c); });
  Acc total{};
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace htlab
