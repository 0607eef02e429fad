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

// Truncated transforms over the bit-reversed spectrum. Both directions walk a
// radix-2 "spine" that only touches the pairs feeding needed outputs; every
// sub-block that is needed in full goes through the general-radix kernel
// with the caller's decomposition restricted to the block size.

#include <algorithm>

#include "kernels.hpp"
#include "modconv/transform.hpp"
#include "parallel.hpp"

namespace modconv {
namespace {

using detail::KernelContext;

class Spine {
 public:
  Spine(const KernelContext& ctx, const Decomposition& d) : ctx_(ctx), d_(d) {}

  // Block of `size` values holding x_0..x_{z-1} (zeros after); leaves the
  // first n bit-reversed spectral values in place.
  std::uint64_t forward(std::uint64_t* a, std::uint64_t size, std::uint64_t z,
                        std::uint64_t n) const {
    if (n == size) return full_forward(a, size);
    const FourierPrime& f = ctx_.field;
    const std::uint64_t h = size / 2;
    const std::uint64_t stride = ctx_.table.size() / size;
    if (n <= h) {
      const std::uint64_t pairs = z > h ? z - h : 0;
      each(size, pairs, [&](std::uint64_t i) { a[i] = f.add(a[i], a[i + h]); });
      return pairs + forward(a, h, std::min(z, h), n);
    }
    const std::uint64_t both = z > h ? z - h : 0;
    const std::uint64_t pairs = std::min(z, h);
    each(size, pairs, [&](std::uint64_t i) {
      const ShoupOperand& w = ctx_.table.power_shoup(stride * i);
      if (i < both) {
        const std::uint64_t u = a[i], v = a[i + h];
        a[i] = f.add(u, v);
        a[i + h] = f.mul_shoup(f.sub(u, v), w);
      } else {
        a[i + h] = f.mul_shoup(a[i], w);
      }
    });
    std::uint64_t count = pairs + full_forward(a, h);
    return count + forward(a + h, h, std::min(z, h), n - h);
  }

  // Block of `size` values: a[0..n) holds the first n bit-reversed spectral
  // values of some x, a[n..size) holds size * x_j. Leaves size * x_j in
  // a[0..n).
  std::uint64_t inverse(std::uint64_t* a, std::uint64_t size, std::uint64_t n) const {
    if (n == size) return full_inverse(a, size);
    if (n == 0) return 0;
    const FourierPrime& f = ctx_.field;
    const std::uint64_t h = size / 2;
    const std::uint64_t stride = ctx_.table.size() / size;
    if (n >= h) {
      std::uint64_t count = full_inverse(a, h);  // a[0..h) = h * (x_i + x_{i+h})
      const std::uint64_t known = n - h;
      each(size, h - known, [&](std::uint64_t k) {
        const std::uint64_t i = known + k;
        const std::uint64_t sum = a[i], tail = a[i + h];
        a[i] = f.sub(f.add(sum, sum), tail);
        a[i + h] = f.mul_shoup(f.sub(sum, tail), ctx_.table.power_shoup(stride * i));
      });
      count += h - known;
      count += inverse(a + h, h, known);
      each(size, known, [&](std::uint64_t i) {
        const std::uint64_t u = a[i];
        const std::uint64_t v =
            f.mul_shoup(a[i + h], ctx_.table.inv_power_shoup(stride * i));
        a[i] = f.add(u, v);
        a[i + h] = f.sub(u, v);
      });
      return count + known;
    }
    each(size, h - n, [&](std::uint64_t k) {
      const std::uint64_t i = n + k;
      a[i] = f.half(f.add(a[i], a[i + h]));
    });
    std::uint64_t count = (h - n) + inverse(a, h, n);
    each(size, n, [&](std::uint64_t i) {
      a[i] = f.sub(f.add(a[i], a[i]), a[i + h]);
    });
    return count + n;
  }

 private:
  std::uint64_t full_forward(std::uint64_t* a, std::uint64_t size) const {
    if (size == 1) return 0;
    return detail::dif_full(ctx_, a, size, restrict_decomposition(d_, size));
  }

  std::uint64_t full_inverse(std::uint64_t* a, std::uint64_t size) const {
    if (size == 1) return 0;
    return detail::dit_full(ctx_, a, size, restrict_decomposition(d_, size));
  }

  template <typename F>
  void each(std::uint64_t block, std::uint64_t count, const F& body) const {
    const unsigned threads = block >= detail::kParallelBlock ? ctx_.threads : 1;
    detail::for_range(threads, count, 1024, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }

  const KernelContext& ctx_;
  const Decomposition& d_;
};

Decomposition choose(const ExecOptions& options, std::uint64_t size) {
  if (size < 2) return Decomposition{};
  if (options.decomposition != nullptr) {
    validate_decomposition(*options.decomposition, size);
    return *options.decomposition;
  }
  return default_decomposition(size);
}

}  // namespace

std::vector<std::uint64_t> tft(const TwiddleTable& table,
                               std::span<const std::uint64_t> x, std::uint64_t n,
                               const ExecOptions& options) {
  const std::uint64_t size = table.size();
  const std::uint64_t z = x.size();
  if (z < 1 || z > n || n > size) {
    throw UsageError("tft needs 1 <= z <= n <= L; got z=" + std::to_string(z) +
                     " n=" + std::to_string(n) + " L=" + std::to_string(size));
  }
  const Decomposition d = choose(options, size);
  const KernelContext ctx(table, options.threads);
  std::vector<std::uint64_t> buf(size, 0);
  std::copy(x.begin(), x.end(), buf.begin());
  std::uint64_t count = 0;
  detail::run_with_threads(ctx.threads, [&] {
    count = Spine(ctx, d).forward(buf.data(), size, z, n);
  });
  if (options.counters) options.counters->butterflies += count;
  buf.resize(n);
  return buf;
}

std::vector<std::uint64_t> itft(const TwiddleTable& table,
                                std::span<const std::uint64_t> xhat,
                                const ExecOptions& options) {
  const std::uint64_t size = table.size();
  const std::uint64_t n = xhat.size();
  if (n < 1 || n > size) {
    throw UsageError("itft needs 1 <= n <= L; got n=" + std::to_string(n) +
                     " L=" + std::to_string(size));
  }
  const Decomposition d = choose(options, size);
  const KernelContext ctx(table, options.threads);
  std::vector<std::uint64_t> buf(size, 0);
  std::copy(xhat.begin(), xhat.end(), buf.begin());
  std::uint64_t count = 0;
  detail::run_with_threads(ctx.threads, [&] {
    count = Spine(ctx, d).inverse(buf.data(), size, n);
  });
  if (options.counters) options.counters->butterflies += count;
  buf.resize(n);
  return buf;
}

}  // namespace modconv
