// Copyright 2026 The modconv Authors.
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

#ifndef MODCONV_SRC_PARALLEL_HPP_
#define MODCONV_SRC_PARALLEL_HPP_

#include <cstddef>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/parallel_invoke.h>
#include <tbb/task_arena.h>

namespace modconv::detail {

// One arena per thread count, created on first use and kept for the process.
tbb::task_arena& arena_for(unsigned threads);

template <typename F>
void run_with_threads(unsigned threads, F&& f) {
  if (threads <= 1) {
    f();
  } else {
    arena_for(threads).execute(f);
  }
}

// body(lo, hi) over [0, n). Must be called from inside run_with_threads.
template <typename F>
void for_range(unsigned threads, std::size_t n, std::size_t grain, const F& body) {
  if (threads <= 1 || n <= grain) {
    body(std::size_t{0}, n);
    return;
  }
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, grain),
                    [&](const tbb::blocked_range<std::size_t>& r) {
                      body(r.begin(), r.end());
                    });
}

template <typename F, typename G>
void invoke_pair(unsigned threads, const F& f, const G& g) {
  if (threads <= 1) {
    f();
    g();
  } else {
    tbb::parallel_invoke(f, g);
  }
}

}  // namespace modconv::detail

#endif  // MODCONV_SRC_PARALLEL_HPP_
