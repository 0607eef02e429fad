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

#include "modconv/convolution.hpp"

#include <algorithm>
#include <bit>

#include "parallel.hpp"

namespace modconv {
namespace {

void require_nonempty(ResidueSpan u, ResidueSpan v) {
  if (u.empty() || v.empty()) throw UsageError("convolution of an empty vector");
}

void require_same_length(ResidueSpan u, ResidueSpan v) {
  if (u.size() != v.size()) {
    throw UsageError("operand lengths differ: " + std::to_string(u.size()) +
                     " vs " + std::to_string(v.size()));
  }
}

std::shared_ptr<const TwiddleTable> table_for(const FourierPrime& f,
                                              std::uint64_t size) {
  if (!std::has_single_bit(size)) {
    throw UsageError("transform length " + std::to_string(size) +
                     " is not a power of two");
  }
  return twiddle_table(f, size);
}

// Decomposition for a transform of `size`, from an optional caller plan.
std::optional<Decomposition> plan_for(const Decomposition* plan, std::uint64_t size) {
  if (plan == nullptr || size < 2) return std::nullopt;
  if (plan->size() == size) return *plan;
  if (plan->size() > size) return restrict_decomposition(*plan, size);
  return std::nullopt;
}

ExecOptions exec(const ConvRequest& req, const std::optional<Decomposition>& d,
                 OpCounters* counters) {
  return ExecOptions{d ? &*d : nullptr, req.threads, counters};
}

// a[i] *= b[i] for i < n.
void pointwise(const ConvRequest& req, std::span<std::uint64_t> a,
               ResidueSpan b, OpCounters& counters) {
  const FourierPrime& f = req.field;
  detail::for_range(req.threads, a.size(), 4096,
                    [&](std::size_t lo, std::size_t hi) {
                      for (std::size_t i = lo; i < hi; ++i) a[i] = f.mul(a[i], b[i]);
                    });
  counters.pointwise_muls += a.size();
}

void flush(const ConvRequest& req, const OpCounters& local) {
  if (req.counters) {
    req.counters->butterflies += local.butterflies;
    req.counters->pointwise_muls += local.pointwise_muls;
  }
}

// Shared body of circ_conv_fft; runs inside the caller's arena.
Residues circular_fft(ResidueSpan u, ResidueSpan v, const ConvRequest& req,
                      OpCounters& counters) {
  const std::uint64_t size = u.size();
  const auto table = table_for(req.field, size);
  const auto fwd = plan_for(req.forward_plan, size);
  const auto inv = plan_for(req.inverse_plan, size);
  Residues a(u.begin(), u.end()), b(v.begin(), v.end());
  OpCounters ca, cb;
  detail::invoke_pair(
      req.threads, [&] { forward_to_bitrev(a, *table, exec(req, fwd, &ca)); },
      [&] { forward_to_bitrev(b, *table, exec(req, fwd, &cb)); });
  counters.butterflies += ca.butterflies + cb.butterflies;
  pointwise(req, a, b, counters);
  inverse_from_bitrev(a, *table, exec(req, inv, &counters));
  const FourierPrime& f = req.field;
  for (auto& x : a) x = f.mul_shoup(x, table->inv_size_shoup());
  return a;
}

Residues negacyclic_fft(ResidueSpan u, ResidueSpan v, const ConvRequest& req,
                        OpCounters& counters) {
  const FourierPrime& f = req.field;
  const std::uint64_t size = u.size();
  const std::uint64_t psi = root_of_unity(f, 2 * size).value();
  const std::uint64_t psi_inv = f.inv(psi);
  Residues tu(size), tv(size);
  std::uint64_t w = 1;
  for (std::uint64_t j = 0; j < size; ++j) {
    tu[j] = f.mul(u[j], w);
    tv[j] = f.mul(v[j], w);
    w = f.mul(w, psi);
  }
  Residues c = circular_fft(tu, tv, req, counters);
  w = 1;
  for (std::uint64_t j = 0; j < size; ++j) {
    c[j] = f.mul(c[j], w);
    w = f.mul(w, psi_inv);
  }
  return c;
}

Residues split_fft(ResidueSpan u, ResidueSpan v, const ConvRequest& req,
                   OpCounters& counters) {
  const FourierPrime& f = req.field;
  if (u.size() < 2 || !std::has_single_bit(u.size())) {
    throw UsageError("split convolution needs a power-of-two length >= 2");
  }
  if (!f.supports_size(u.size())) {
    throw UnsupportedSizeError("split convolution of length " +
                               std::to_string(u.size()) + " unsupported by p=" +
                               std::to_string(f.modulus()));
  }
  auto [cu, nu] = split_residues(f, u);
  auto [cv, nv] = split_residues(f, v);
  Residues cyc, neg;
  OpCounters c1, c2;
  detail::invoke_pair(
      req.threads, [&] { cyc = circular_fft(cu, cv, req, c1); },
      [&] { neg = negacyclic_fft(nu, nv, req, c2); });
  counters.butterflies += c1.butterflies + c2.butterflies;
  counters.pointwise_muls += c1.pointwise_muls + c2.pointwise_muls;
  return recombine_residues(f, cyc, neg);
}

Residues tft_conv(ResidueSpan g, ResidueSpan h, const ConvRequest& req,
                  const Decomposition* fwd_plan, const Decomposition* inv_plan,
                  OpCounters& counters) {
  const FourierPrime& f = req.field;
  const std::uint64_t n = g.size() + h.size() - 1;
  const std::uint64_t size = next_pow2(n);
  if (!f.supports_size(size)) {
    throw UnsupportedSizeError("product length " + std::to_string(n) +
                               " needs a transform of " + std::to_string(size) +
                               "; p=" + std::to_string(f.modulus()) +
                               " has 2-adicity " + std::to_string(f.two_adicity()));
  }
  const auto table = twiddle_table(f, size);
  const auto fwd = plan_for(fwd_plan, size);
  const auto inv = plan_for(inv_plan, size);
  Residues gh, hh;
  OpCounters cg, ch;
  detail::invoke_pair(
      req.threads, [&] { gh = tft(*table, g, n, exec(req, fwd, &cg)); },
      [&] { hh = tft(*table, h, n, exec(req, fwd, &ch)); });
  counters.butterflies += cg.butterflies + ch.butterflies;
  pointwise(req, gh, hh, counters);
  Residues u = itft(*table, gh, exec(req, inv, &counters));
  for (auto& x : u) x = f.mul_shoup(x, table->inv_size_shoup());
  return u;
}

template <typename F>
Residues in_arena(const ConvRequest& req, F&& body) {
  OpCounters local;
  Residues out;
  detail::run_with_threads(req.threads, [&] { out = body(local); });
  flush(req, local);
  return out;
}

}  // namespace

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::kDefinition: return "definition";
    case Engine::kFftPad: return "fft_pad";
    case Engine::kTft: return "tft";
    case Engine::kSplit: return "split";
    case Engine::kAuto: return "auto";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view text) {
  for (Engine e : {Engine::kDefinition, Engine::kFftPad, Engine::kTft,
                   Engine::kSplit, Engine::kAuto}) {
    if (to_string(e) == text) return e;
  }
  return std::nullopt;
}

std::uint64_t next_pow2(std::uint64_t n) { return std::bit_ceil(std::max<std::uint64_t>(n, 1)); }

Residues circ_conv_def(const FourierPrime& f, ResidueSpan u, ResidueSpan v) {
  require_same_length(u, v);
  const std::size_t n = u.size();
  Residues out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
      acc = f.add(acc, f.mul(u[k], v[(i + n - k) % n]));
    }
    out[i] = acc;
  }
  return out;
}

Residues lin_conv_def(const FourierPrime& f, ResidueSpan u, ResidueSpan v) {
  require_nonempty(u, v);
  Residues out(u.size() + v.size() - 1, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t acc = 0;
    const std::size_t k_lo = i >= u.size() ? i - u.size() + 1 : 0;
    const std::size_t k_hi = std::min(i, v.size() - 1);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      acc = f.add(acc, f.mul(u[i - k], v[k]));
    }
    out[i] = acc;
  }
  return out;
}

Residues circ_conv_fft(ResidueSpan u, ResidueSpan v, const ConvRequest& req) {
  require_same_length(u, v);
  require_nonempty(u, v);
  if (!std::has_single_bit(u.size())) {
    throw UsageError("circular convolution length " + std::to_string(u.size()) +
                     " is not a power of two");
  }
  if (!req.field.supports_size(u.size())) {
    throw UnsupportedSizeError("circular convolution of length " +
                               std::to_string(u.size()) + " unsupported by p=" +
                               std::to_string(req.field.modulus()));
  }
  return in_arena(req, [&](OpCounters& c) { return circular_fft(u, v, req, c); });
}

Residues lin_conv_fft_pad(ResidueSpan u, ResidueSpan v, const ConvRequest& req) {
  require_nonempty(u, v);
  const std::uint64_t n = u.size() + v.size() - 1;
  const std::uint64_t size = next_pow2(n);
  if (!req.field.supports_size(size)) {
    throw UnsupportedSizeError("product length " + std::to_string(n) +
                               " needs a transform of " + std::to_string(size) +
                               "; p=" + std::to_string(req.field.modulus()) +
                               " has 2-adicity " +
                               std::to_string(req.field.two_adicity()));
  }
  Residues a(size, 0), b(size, 0);
  std::copy(u.begin(), u.end(), a.begin());
  std::copy(v.begin(), v.end(), b.begin());
  Residues c = in_arena(req, [&](OpCounters& cnt) { return circular_fft(a, b, req, cnt); });
  c.resize(n);
  return c;
}

Residues nega_conv(ResidueSpan u, ResidueSpan v, const ConvRequest& req) {
  require_same_length(u, v);
  require_nonempty(u, v);
  if (!std::has_single_bit(u.size()) || !req.field.supports_size(2 * u.size())) {
    throw UnsupportedSizeError("negacyclic convolution of length " +
                               std::to_string(u.size()) + " needs 2N | p-1; p=" +
                               std::to_string(req.field.modulus()));
  }
  return in_arena(req, [&](OpCounters& c) { return negacyclic_fft(u, v, req, c); });
}

std::pair<Residues, Residues> split_residues(const FourierPrime& f, ResidueSpan u) {
  if (u.size() % 2 != 0) throw UsageError("split needs an even length");
  const std::size_t n = u.size() / 2;
  Residues cyc(n), neg(n);
  for (std::size_t j = 0; j < n; ++j) {
    cyc[j] = f.add(u[j], u[j + n]);
    neg[j] = f.sub(u[j], u[j + n]);
  }
  return {std::move(cyc), std::move(neg)};
}

Residues recombine_residues(const FourierPrime& f, ResidueSpan cyc, ResidueSpan neg) {
  require_same_length(cyc, neg);
  const std::size_t n = cyc.size();
  Residues out(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = f.half(f.add(cyc[j], neg[j]));
    out[j + n] = f.half(f.sub(cyc[j], neg[j]));
  }
  return out;
}

Residues circ_conv_split(ResidueSpan u, ResidueSpan v, const ConvRequest& req) {
  require_same_length(u, v);
  return in_arena(req, [&](OpCounters& c) { return split_fft(u, v, req, c); });
}

Residues conv_tft(ResidueSpan g, ResidueSpan h, const ConvRequest& req) {
  require_nonempty(g, h);
  return in_arena(req, [&](OpCounters& c) {
    return tft_conv(g, h, req, req.forward_plan, req.inverse_plan, c);
  });
}

namespace {

Residues auto_conv(ResidueSpan g, ResidueSpan h, const ConvRequest& req) {
  if (req.plans == nullptr) {
    throw UsageError("engine auto needs a plan store");
  }
  const std::uint64_t size = next_pow2(g.size() + h.size() - 1);
  if (size < 2) return lin_conv_def(req.field, g, h);
  const PlanKey key =
      PlanKey::canonical(PlanKind::kConv, req.field.modulus(), size, req.threads);
  const PlanEntry* entry = req.plans->find(key, req.signature);
  if (entry == nullptr) entry = req.plans->find_any(key);
  if (entry == nullptr) {
    throw UsageError("engine auto: no conv plan for L=" + std::to_string(size) +
                     " p=" + std::to_string(req.field.modulus()) +
                     " threads=" + std::to_string(req.threads));
  }
  const Decomposition fwd = entry->decomposition;
  const Decomposition inv = mirrored(fwd);
  return in_arena(req, [&](OpCounters& c) {
    return tft_conv(g, h, req, &fwd, &inv, c);
  });
}

}  // namespace

DensePoly poly_mul(const DensePoly& a, const DensePoly& b, const ConvRequest& req) {
  if (!(a.field() == b.field()) || !(a.field() == req.field)) {
    throw UsageError("poly_mul: operands and request use different moduli");
  }
  const auto da = a.degree(), db = b.degree();
  if (!da || !db) return DensePoly(a.field());
  const ResidueSpan u = a.coeffs().first(*da + 1);
  const ResidueSpan v = b.coeffs().first(*db + 1);

  Residues c;
  switch (req.engine) {
    case Engine::kDefinition:
      c = lin_conv_def(req.field, u, v);
      break;
    case Engine::kFftPad:
      c = lin_conv_fft_pad(u, v, req);
      break;
    case Engine::kTft:
      c = conv_tft(u, v, req);
      break;
    case Engine::kSplit: {
      const std::uint64_t n = u.size() + v.size() - 1;
      const std::uint64_t size = std::max<std::uint64_t>(2, next_pow2(n));
      Residues pu(size, 0), pv(size, 0);
      std::copy(u.begin(), u.end(), pu.begin());
      std::copy(v.begin(), v.end(), pv.begin());
      c = circ_conv_split(pu, pv, req);
      c.resize(n);
      break;
    }
    case Engine::kAuto:
      c = auto_conv(u, v, req);
      break;
  }
  return normalize(DensePoly(a.field(), std::move(c)));
}

}  // namespace modconv
