// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace panowarp::detail {

inline int resolve_thread_count(int requested, int work_items) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    n = std::clamp(n, 1, 8);
  }
  return std::clamp(n, 1, std::max(work_items, 1));
}

/// Splits [0, rows) into `workers` contiguous chunks and runs fn(worker, begin,
/// end) for each, the first chunk on the calling thread. Rethrows the first
/// worker exception (lowest worker index).
template <typename Fn>
void for_each_row_chunk(int rows, int workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0, 0, rows);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](int w) {
    const int begin = static_cast<int>(static_cast<long long>(rows) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(rows) * (w + 1) / workers);
    try {
      fn(w, begin, end);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace panowarp::detail
