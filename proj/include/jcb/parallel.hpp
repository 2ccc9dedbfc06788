// Copyright 2026 The jacobi-codebooks Authors.
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
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace jcb {

// Worker cap from CODEBOOK_THREADS; 0 or unset means hardware concurrency.
unsigned worker_count();

// Splits [0, n) into contiguous chunks and runs fn(chunk, begin, end) on up to
// worker_count() threads. The chunking depends only on n and the worker
// count; the first exception thrown by any chunk is rethrown.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t chunks, Fn&& fn) {
  if (n == 0) return;
  chunks = std::clamp<std::size_t>(chunks, 1, n);
  const std::size_t workers = std::min<std::size_t>(worker_count(), chunks);
  auto bounds = [&](std::size_t c) { return n * c / chunks; };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c, bounds(c), bounds(c + 1));
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = w; c < chunks; c += workers) fn(c, bounds(c), bounds(c + 1));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace jcb
