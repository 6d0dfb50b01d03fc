// Copyright 2026 The Strata Authors
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

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace strata {

namespace detail {
inline std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{0};  // 0 = hardware concurrency
  return cap;
}
}  // namespace detail

/// Caps the worker count used by parallel_for_blocks. 0 restores the default
/// (std::thread::hardware_concurrency).
inline void set_thread_count(unsigned n) { detail::thread_cap().store(n); }

inline unsigned thread_count() {
  unsigned n = detail::thread_cap().load();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1u : n;
}

/// Runs fn(block_index, begin, end) over fixed-size blocks of [0, n).
///
/// Block boundaries depend only on n and block_size, never on the worker
/// count, so callers that need bit-reproducible reductions can write one
/// partial result per block_index and merge the partials in block order
/// afterwards. Each block is processed sequentially by exactly one worker.
template <class Fn>
void parallel_for_blocks(std::size_t n, std::size_t block_size, Fn&& fn) {
  if (n == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t n_blocks = (n + block_size - 1) / block_size;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), n_blocks));

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * block_size;
    const std::size_t end = std::min(n, begin + block_size);
    fn(b, begin, end);
  };

  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks || failed.load()) return;
      try {
        run_block(b);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace strata
