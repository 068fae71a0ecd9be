// Copyright 2026 The adrt Authors
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
#include <mutex>
#include <thread>
#include <vector>

namespace adrt::detail {

/// 0 means "library default" (hardware concurrency, at least 1).
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count). Each index must touch disjoint output, so
// results are identical for any worker count.
template <typename Fn>
void parallel_for(std::ptrdiff_t count, int workers, Fn&& fn) {
  if (count <= 0) return;
  std::ptrdiff_t nthreads = resolve_workers(workers);
  if (nthreads > count) nthreads = count;
  if (nthreads <= 1) {
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::ptrdiff_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    try {
      for (std::ptrdiff_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (std::ptrdiff_t t = 0; t < nthreads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace adrt::detail
