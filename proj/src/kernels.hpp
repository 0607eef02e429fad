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

#ifndef MODCONV_SRC_KERNELS_HPP_
#define MODCONV_SRC_KERNELS_HPP_

#include <array>
#include <cstdint>

#include "modconv/transform.hpp"

namespace modconv::detail {

// Roots used inside the straight-line codelets: w4 = w^(L/4), w8[k] = w^(kL/8).
struct CodeletRoots {
  ShoupOperand w4;
  std::array<ShoupOperand, 4> w8;
};

struct KernelContext {
  KernelContext(const TwiddleTable& t, unsigned thread_count);

  const TwiddleTable& table;
  const FourierPrime& field;
  unsigned threads;
  CodeletRoots forward;
  CodeletRoots inverse;
};

// Blocks at least this large are split across workers.
inline constexpr std::uint64_t kParallelBlock = std::uint64_t{1} << 12;

// In-place DIF over a block of `size` values: natural order in, bit-reversed
// out. d must satisfy d.size() == size (ignored for size 1). Returns the
// number of butterflies executed.
std::uint64_t dif_full(const KernelContext& ctx, std::uint64_t* a,
                       std::uint64_t size, const Decomposition& d);

// In-place unscaled DIT inverse of dif_full: returns size * x.
std::uint64_t dit_full(const KernelContext& ctx, std::uint64_t* a,
                       std::uint64_t size, const Decomposition& d);

inline int log2_exact(std::uint64_t n) { return std::countr_zero(n); }

}  // namespace modconv::detail

#endif  // MODCONV_SRC_KERNELS_HPP_
