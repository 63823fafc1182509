// core/parallel.h

// Copyright 2026  The inear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef INEAR_CORE_PARALLEL_H_
#define INEAR_CORE_PARALLEL_H_

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace inear::core {

/// Runs fn(i) for i in [0, n) on up to `workers` threads.  Indices are handed
/// out in order; results must be stored by index.  The first exception thrown
/// by any call is rethrown after all workers finish.
inline void ParallelFor(std::size_t n, int workers,
                        const std::function<void(std::size_t)> &fn) {
  if (n == 0) return;
  const std::size_t count =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (count == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(body);
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace inear::core

#endif  // INEAR_CORE_PARALLEL_H_
