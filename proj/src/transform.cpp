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

#include "modconv/transform.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "kernels.hpp"
#include "parallel.hpp"

#include <tbb/global_control.h>

namespace modconv {
namespace detail {

tbb::task_arena& arena_for(unsigned threads) {
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<tbb::task_arena>> arenas;
  // Lets an arena have more workers than logical cores.
  static std::unique_ptr<tbb::global_control> limit;
  static std::size_t limit_value = 0;
  std::lock_guard lock(mu);
  if (threads > limit_value) {
    auto wider = std::make_unique<tbb::global_control>(
        tbb::global_control::max_allowed_parallelism, threads);
    limit = std::move(wider);
    limit_value = threads;
  }
  auto& slot = arenas[threads];
  if (!slot) slot = std::make_unique<tbb::task_arena>(static_cast<int>(threads));
  return *slot;
}

namespace {

constexpr std::array<std::uint32_t, 2> kRev2 = {0, 1};
constexpr std::array<std::uint32_t, 4> kRev4 = {0, 2, 1, 3};
constexpr std::array<std::uint32_t, 8> kRev8 = {0, 4, 2, 6, 1, 5, 3, 7};

template <unsigned R>
constexpr const std::uint32_t* rev_table() {
  if constexpr (R == 2) return kRev2.data();
  if constexpr (R == 4) return kRev4.data();
  if constexpr (R == 8) return kRev8.data();
}

inline void dft2(const FourierPrime& f, std::uint64_t* v) {
  const std::uint64_t s = f.add(v[0], v[1]);
  v[1] = f.sub(v[0], v[1]);
  v[0] = s;
}

inline void dft4(const FourierPrime& f, const ShoupOperand& w4, std::uint64_t& v0,
                 std::uint64_t& v1, std::uint64_t& v2, std::uint64_t& v3) {
  const std::uint64_t s0 = f.add(v0, v2);
  const std::uint64_t d0 = f.sub(v0, v2);
  const std::uint64_t s1 = f.add(v1, v3);
  const std::uint64_t d1 = f.mul_shoup(f.sub(v1, v3), w4);
  v0 = f.add(s0, s1);
  v2 = f.sub(s0, s1);
  v1 = f.add(d0, d1);
  v3 = f.sub(d0, d1);
}

inline void dft8(const FourierPrime& f, const CodeletRoots& c, std::uint64_t* v) {
  std::uint64_t e0 = v[0], e1 = v[2], e2 = v[4], e3 = v[6];
  std::uint64_t o0 = v[1], o1 = v[3], o2 = v[5], o3 = v[7];
  dft4(f, c.w4, e0, e1, e2, e3);
  dft4(f, c.w4, o0, o1, o2, o3);
  o1 = f.mul_shoup(o1, c.w8[1]);
  o2 = f.mul_shoup(o2, c.w8[2]);
  o3 = f.mul_shoup(o3, c.w8[3]);
  v[0] = f.add(e0, o0);
  v[4] = f.sub(e0, o0);
  v[1] = f.add(e1, o1);
  v[5] = f.sub(e1, o1);
  v[2] = f.add(e2, o2);
  v[6] = f.sub(e2, o2);
  v[3] = f.add(e3, o3);
  v[7] = f.sub(e3, o3);
}

template <unsigned R>
inline void codelet(const FourierPrime& f, const CodeletRoots& c, std::uint64_t* v) {
  if constexpr (R == 2) dft2(f, v);
  if constexpr (R == 4) dft4(f, c.w4, v[0], v[1], v[2], v[3]);
  if constexpr (R == 8) dft8(f, c, v);
}

constexpr std::uint64_t codelet_butterflies(unsigned r) {
  return r == 2 ? 1 : r == 4 ? 4 : 12;
}

// Columns [j0, j1) of one DIF step on a block of R*m values. stride maps the
// block's root powers onto the table: w_block^k = table.power(stride * k).
template <unsigned R>
void dif_pass(const KernelContext& ctx, std::uint64_t* a, std::uint64_t m,
              std::uint64_t stride, std::uint64_t j0, std::uint64_t j1) {
  const FourierPrime& f = ctx.field;
  const std::uint32_t* rev = rev_table<R>();
  std::uint64_t v[R];
  for (std::uint64_t j = j0; j < j1; ++j) {
    for (unsigned t = 0; t < R; ++t) v[t] = a[j + t * m];
    codelet<R>(f, ctx.forward, v);
    a[j] = v[0];
    if (j == 0) {
      for (unsigned q = 1; q < R; ++q) a[rev[q] * m] = v[q];
    } else {
      const std::uint64_t step = stride * j;
      for (unsigned q = 1; q < R; ++q) {
        a[j + rev[q] * m] = f.mul_shoup(v[q], ctx.table.power_shoup(step * q));
      }
    }
  }
}

template <unsigned R>
void dit_pass(const KernelContext& ctx, std::uint64_t* a, std::uint64_t m,
              std::uint64_t stride, std::uint64_t j0, std::uint64_t j1) {
  const FourierPrime& f = ctx.field;
  const std::uint32_t* rev = rev_table<R>();
  std::uint64_t v[R];
  for (std::uint64_t j = j0; j < j1; ++j) {
    v[0] = a[j];
    if (j == 0) {
      for (unsigned q = 1; q < R; ++q) v[q] = a[rev[q] * m];
    } else {
      const std::uint64_t step = stride * j;
      for (unsigned q = 1; q < R; ++q) {
        v[q] = f.mul_shoup(a[j + rev[q] * m], ctx.table.inv_power_shoup(step * q));
      }
    }
    codelet<R>(f, ctx.inverse, v);
    for (unsigned t = 0; t < R; ++t) a[j + t * m] = v[t];
  }
}

template <bool Forward>
void run_pass(const KernelContext& ctx, std::uint64_t* a, unsigned radix,
              std::uint64_t m, std::uint64_t stride, std::uint64_t j0,
              std::uint64_t j1) {
  switch (radix) {
    case 2:
      Forward ? dif_pass<2>(ctx, a, m, stride, j0, j1)
              : dit_pass<2>(ctx, a, m, stride, j0, j1);
      break;
    case 4:
      Forward ? dif_pass<4>(ctx, a, m, stride, j0, j1)
              : dit_pass<4>(ctx, a, m, stride, j0, j1);
      break;
    case 8:
      Forward ? dif_pass<8>(ctx, a, m, stride, j0, j1)
              : dit_pass<8>(ctx, a, m, stride, j0, j1);
      break;
    default:
      throw UsageError("unsupported radix " + std::to_string(radix));
  }
}

template <bool Forward>
std::uint64_t transform_rec(const KernelContext& ctx, std::uint64_t* a,
                            std::uint64_t size, const Decomposition& d,
                            std::size_t level) {
  if (size == 1) return 0;
  if (level == d.splits.size()) {
    run_pass<Forward>(ctx, a, static_cast<unsigned>(size), 1, 0, 0, 1);
    return codelet_butterflies(static_cast<unsigned>(size));
  }
  const unsigned radix = d.splits[level];
  const std::uint64_t m = size / radix;
  const std::uint64_t stride = ctx.table.size() / size;
  const bool parallel = ctx.threads > 1 && size >= kParallelBlock;

  auto pass = [&] {
    for_range(parallel ? ctx.threads : 1, m, 256,
              [&](std::size_t lo, std::size_t hi) {
                run_pass<Forward>(ctx, a, radix, m, stride, lo, hi);
              });
  };
  std::array<std::uint64_t, 8> sub{};
  auto blocks = [&] {
    for_range(parallel ? ctx.threads : 1, radix, 1,
              [&](std::size_t lo, std::size_t hi) {
                for (std::size_t t = lo; t < hi; ++t) {
                  sub[t] = transform_rec<Forward>(ctx, a + t * m, m, d, level + 1);
                }
              });
  };
  if constexpr (Forward) {
    pass();
    blocks();
  } else {
    blocks();
    pass();
  }
  std::uint64_t total = m * codelet_butterflies(radix);
  for (unsigned t = 0; t < radix; ++t) total += sub[t];
  return total;
}

CodeletRoots make_roots(const TwiddleTable& t, bool inverse) {
  CodeletRoots c;
  const std::uint64_t L = t.size();
  auto at = [&](std::uint64_t j) {
    return inverse ? t.inv_power_shoup(j) : t.power_shoup(j);
  };
  if (L >= 4) c.w4 = at(L / 4);
  if (L >= 8) {
    for (unsigned k = 0; k < 4; ++k) c.w8[k] = at(k * L / 8);
  }
  return c;
}

}  // namespace

KernelContext::KernelContext(const TwiddleTable& t, unsigned thread_count)
    : table(t),
      field(t.field()),
      threads(std::max(1u, thread_count)),
      forward(make_roots(t, false)),
      inverse(make_roots(t, true)) {}

std::uint64_t dif_full(const KernelContext& ctx, std::uint64_t* a,
                       std::uint64_t size, const Decomposition& d) {
  return transform_rec<true>(ctx, a, size, d, 0);
}

std::uint64_t dit_full(const KernelContext& ctx, std::uint64_t* a,
                       std::uint64_t size, const Decomposition& d) {
  return transform_rec<false>(ctx, a, size, d, 0);
}

}  // namespace detail

namespace {

bool in_menu(std::uint64_t r) {
  return std::find(kRadixMenu.begin(), kRadixMenu.end(), r) != kRadixMenu.end();
}

const Decomposition& pick_decomposition(const ExecOptions& options,
                                        std::uint64_t n, Decomposition& storage) {
  if (options.decomposition != nullptr) {
    validate_decomposition(*options.decomposition, n);
    return *options.decomposition;
  }
  storage = n >= 2 ? default_decomposition(n) : Decomposition{};
  return storage;
}

void require_table_size(std::size_t got, const TwiddleTable& table) {
  if (got != table.size()) {
    throw UsageError("vector length " + std::to_string(got) +
                     " does not match transform size " +
                     std::to_string(table.size()));
  }
}

}  // namespace

std::uint64_t Decomposition::size() const {
  std::uint64_t n = base;
  for (auto r : splits) n *= r;
  return n;
}

std::string Decomposition::to_string() const {
  std::ostringstream out;
  for (auto r : splits) out << r << 'x';
  out << base;
  return out.str();
}

void validate_decomposition(const Decomposition& d, std::uint64_t n) {
  if (!in_menu(d.base)) {
    throw UsageError("base case " + std::to_string(d.base) + " not in {2,4,8}");
  }
  for (auto r : d.splits) {
    if (!in_menu(r)) throw UsageError("radix " + std::to_string(r) + " not in {2,4,8}");
  }
  if (d.size() != n) {
    throw UsageError("decomposition " + d.to_string() + " does not factor " +
                     std::to_string(n));
  }
}

Decomposition default_decomposition(std::uint64_t n) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw UsageError("default_decomposition: size must be a power of two >= 2");
  }
  const int bits = std::countr_zero(n);
  if (bits <= 3) return Decomposition{{}, static_cast<std::uint32_t>(n)};
  Decomposition d{{}, 8};
  int rest = bits - 3;
  if (rest % 3 != 0) {
    d.splits.push_back(1u << (rest % 3));
    rest -= rest % 3;
  }
  for (; rest > 0; rest -= 3) d.splits.push_back(8);
  return d;
}

Decomposition restrict_decomposition(const Decomposition& d, std::uint64_t size) {
  const std::uint64_t full = d.size();
  if (size < 2 || size > full || !std::has_single_bit(size)) {
    throw UsageError("cannot restrict " + d.to_string() + " to size " +
                     std::to_string(size));
  }
  std::uint64_t cur = full;
  std::size_t i = 0;
  while (i < d.splits.size() && cur > size) {
    const std::uint64_t next = cur / d.splits[i];
    if (next >= size) {
      cur = next;
      ++i;
      continue;
    }
    Decomposition out{{static_cast<std::uint32_t>(size / next)}, d.base};
    out.splits.insert(out.splits.end(), d.splits.begin() + i + 1, d.splits.end());
    return out;
  }
  if (cur == size) {
    return Decomposition{{d.splits.begin() + i, d.splits.end()}, d.base};
  }
  return Decomposition{{}, static_cast<std::uint32_t>(size)};
}

TwiddleTable::TwiddleTable(const FourierPrime& field, std::uint64_t size)
    : field_(field), size_(size) {
  const std::uint64_t w = root_of_unity(field, size).value();
  const std::uint64_t w_inv = field.inv(w);
  powers_.resize(size);
  inv_powers_.resize(size);
  std::uint64_t x = 1, y = 1;
  for (std::uint64_t j = 0; j < size; ++j) {
    powers_[j] = field.shoup(x);
    inv_powers_[j] = field.shoup(y);
    x = field.mul(x, w);
    y = field.mul(y, w_inv);
  }
  inv_size_ = field.shoup(field.inv(size));
}

std::shared_ptr<const TwiddleTable> twiddle_table(const FourierPrime& field,
                                                  std::uint64_t size) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>,
                  std::shared_ptr<const TwiddleTable>>
      cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({field.modulus(), size});
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const TwiddleTable>(field, size);
  std::lock_guard lock(mu);
  return cache.try_emplace({field.modulus(), size}, std::move(table)).first->second;
}

void corrupt_twiddle_for_testing(TwiddleTable& table, std::uint64_t j) {
  const FourierPrime& f = table.field_;
  table.powers_.at(j) = f.shoup(f.add(table.powers_[j].value, 1));
}

void forward_to_bitrev(std::span<std::uint64_t> a, const TwiddleTable& table,
                       const ExecOptions& options) {
  require_table_size(a.size(), table);
  Decomposition storage;
  const Decomposition& d = pick_decomposition(options, a.size(), storage);
  const detail::KernelContext ctx(table, options.threads);
  std::uint64_t count = 0;
  detail::run_with_threads(ctx.threads, [&] {
    count = detail::dif_full(ctx, a.data(), a.size(), d);
  });
  if (options.counters) options.counters->butterflies += count;
}

void inverse_from_bitrev(std::span<std::uint64_t> a, const TwiddleTable& table,
                         const ExecOptions& options) {
  require_table_size(a.size(), table);
  Decomposition storage;
  const Decomposition& d = pick_decomposition(options, a.size(), storage);
  const detail::KernelContext ctx(table, options.threads);
  std::uint64_t count = 0;
  detail::run_with_threads(ctx.threads, [&] {
    count = detail::dit_full(ctx, a.data(), a.size(), d);
  });
  if (options.counters) options.counters->butterflies += count;
}

std::vector<std::uint64_t> moddft(std::span<const std::uint64_t> x,
                                  const TwiddleTable& table, Direction dir,
                                  const ExecOptions& options) {
  require_table_size(x.size(), table);
  if (dir == Direction::kForward) {
    std::vector<std::uint64_t> buf(x.begin(), x.end());
    forward_to_bitrev(buf, table, options);
    return bit_reverse_permute(buf);
  }
  auto buf = bit_reverse_permute(x);
  inverse_from_bitrev(buf, table, options);
  const FourierPrime& f = table.field();
  for (auto& v : buf) v = f.mul_shoup(v, table.inv_size_shoup());
  return buf;
}

std::vector<std::uint64_t> moddft_ct_step(std::span<const std::uint64_t> x,
                                          std::uint64_t n1, std::uint64_t n2,
                                          const TwiddleTable& table,
                                          Direction dir,
                                          const ExecOptions& options) {
  if (!in_menu(n1) || n2 < 2 || !std::has_single_bit(n2) ||
      n1 * n2 != x.size()) {
    throw UsageError("invalid Cooley-Tukey factorization " + std::to_string(n1) +
                     "x" + std::to_string(n2) + " of " + std::to_string(x.size()));
  }
  Decomposition d = default_decomposition(n2);
  d.splits.insert(d.splits.begin(), static_cast<std::uint32_t>(n1));
  ExecOptions opts = options;
  opts.decomposition = &d;
  return moddft(x, table, dir, opts);
}

std::vector<std::uint64_t> dft_basecase(std::span<const std::uint64_t> x,
                                        const TwiddleTable& table, Direction dir) {
  const std::uint64_t n = x.size();
  if (!in_menu(n) || table.size() % n != 0) {
    throw UsageError("base case needs length 2, 4 or 8 dividing the table size");
  }
  const detail::KernelContext ctx(table, 1);
  const detail::CodeletRoots& roots =
      dir == Direction::kForward ? ctx.forward : ctx.inverse;
  std::vector<std::uint64_t> v(x.begin(), x.end());
  switch (n) {
    case 2: detail::codelet<2>(ctx.field, roots, v.data()); break;
    case 4: detail::codelet<4>(ctx.field, roots, v.data()); break;
    default: detail::codelet<8>(ctx.field, roots, v.data()); break;
  }
  return v;
}

std::vector<std::uint64_t> reference_dft(std::span<const std::uint64_t> x,
                                         const TwiddleTable& table,
                                         Direction dir) {
  require_table_size(x.size(), table);
  const FourierPrime& f = table.field();
  const std::uint64_t n = x.size();
  std::vector<std::uint64_t> y(n, 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    std::uint64_t acc = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
      const std::uint64_t e = (j * k) % n;
      const std::uint64_t w =
          dir == Direction::kForward ? table.power(e) : table.inv_power(e);
      acc = f.add(acc, f.mul(x[j], w));
    }
    y[k] = dir == Direction::kForward ? acc : f.mul(acc, table.inv_size());
  }
  return y;
}

}  // namespace modconv
