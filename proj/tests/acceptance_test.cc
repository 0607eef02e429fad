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

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "modconv/convolution.hpp"
#include "modconv/plan_store.hpp"
#include "modconv/planner.hpp"
#include "modconv/polyring.hpp"
#include "modconv/transform.hpp"
#include "oracles.hpp"

namespace {

using modconv::Residues;
using oracle::Vec;

constexpr std::uint64_t kSmall = 257;
constexpr std::uint64_t kLarge = 998244353;

// Timing repetitions per (n, engine) cell of criterion 6.
constexpr int kTimingReps = 21;

struct Outcome {
  bool pass = true;
  std::uint64_t checks = 0;
  std::string detail;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what();
    }
  }
};

int failures = 0;

void report(int id, const char* name, const char* tolerance, const Outcome& o, double secs) {
  std::printf("criterion %d %-28s %s  checks=%llu tolerance=%s time=%.1fs%s%s\n", id, name,
              o.pass ? "PASS" : "FAIL", static_cast<unsigned long long>(o.checks), tolerance,
              secs, o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <typename F>
void criterion(int id, const char* name, const char* tolerance, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, name, tolerance, o, secs);
}

modconv::ConvRequest request(std::uint64_t p) {
  return modconv::ConvRequest(modconv::FourierPrime(p));
}

std::string at(std::uint64_t a, std::uint64_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(1);
  for (std::uint64_t p : {kSmall, kLarge}) {
    const modconv::FourierPrime f(p);
    const auto req = request(p);
    for (std::uint64_t z1 = 1; z1 <= 128; ++z1) {
      for (std::uint64_t z2 = 1; z2 <= 128; ++z2) {
        const Vec g = oracle::random_vec(rng, z1, p), h = oracle::random_vec(rng, z2, p);
        const Residues want = modconv::lin_conv_def(f, g, h);
        if ((z1 * 128 + z2) % 97 == 0) {
          o.expect(want == oracle::linear(g, h, p), [&] { return "definition " + at(z1, z2); });
        }
        o.expect(modconv::lin_conv_fft_pad(g, h, req) == want,
                 [&] { return "fft_pad " + at(z1, z2) + " p=" + std::to_string(p); });
        o.expect(modconv::conv_tft(g, h, req) == want,
                 [&] { return "tft " + at(z1, z2) + " p=" + std::to_string(p); });
        const std::uint64_t size = std::max<std::uint64_t>(4, modconv::next_pow2(z1 + z2 - 1));
        if (f.supports_size(size)) {
          Vec pg(size, 0), ph(size, 0);
          std::copy(g.begin(), g.end(), pg.begin());
          std::copy(h.begin(), h.end(), ph.begin());
          Residues c = modconv::circ_conv_split(pg, ph, req);
          c.resize(z1 + z2 - 1);
          o.expect(c == want, [&] { return "split " + at(z1, z2) + " p=" + std::to_string(p); });
        }
      }
    }
  }
}

void roundtrips_and_bounds(Outcome& rt, Outcome& bf) {
  std::mt19937_64 rng(2);
  const modconv::FourierPrime f(kLarge);
  for (std::uint64_t size = 2; size <= (1u << 16); size *= 2) {
    const auto t = modconv::twiddle_table(f, size);
    const Vec x = oracle::random_vec(rng, size, kLarge);
    modconv::OpCounters c;
    const Residues y = modconv::moddft(x, *t, modconv::Direction::kForward, {nullptr, 1, &c});
    rt.expect(modconv::moddft(y, *t, modconv::Direction::kInverse) == x,
              [&] { return "moddft N=" + std::to_string(size); });
    bf.expect(c.butterflies == size / 2 * std::countr_zero(size),
              [&] { return "full DFT count at L=" + std::to_string(size); });
  }
  for (std::uint64_t size = 1; size <= 1024; size *= 2) {
    const auto t = modconv::twiddle_table(f, size);
    const std::uint64_t logl = std::countr_zero(size);
    for (std::uint64_t n = 1; n <= size; ++n) {
      const Vec x = oracle::random_vec(rng, n, kLarge);
      modconv::OpCounters fc, ic;
      const Residues xhat = modconv::tft(*t, x, n, {nullptr, 1, &fc});
      const Residues back = modconv::itft(*t, xhat, {nullptr, 1, &ic});
      bool ok = back.size() == n;
      for (std::size_t i = 0; ok && i < n; ++i) ok = back[i] == oracle::mulmod(x[i], size, kLarge);
      rt.expect(ok, [&] { return "itft(tft) L=" + std::to_string(size) + " n=" + std::to_string(n); });
      const std::uint64_t bound = n * logl / 2 + size;
      bf.expect(fc.butterflies <= bound && ic.butterflies <= bound, [&] {
        return "bound at L=" + std::to_string(size) + " n=" + std::to_string(n) +
               ": tft " + std::to_string(fc.butterflies) + ", itft " +
               std::to_string(ic.butterflies) + " > " + std::to_string(bound);
      });
    }
  }
}

void convolution_theorem(Outcome& o) {
  std::mt19937_64 rng(3);
  const modconv::FourierPrime f(kLarge);
  for (std::uint64_t n = 2; n <= 256; n *= 2) {
    const auto t = modconv::twiddle_table(f, n);
    for (int trial = 0; trial < 200; ++trial) {
      const Vec u = oracle::random_vec(rng, n, kLarge), v = oracle::random_vec(rng, n, kLarge);
      const Residues lhs =
          modconv::moddft(modconv::circ_conv_def(f, u, v), *t, modconv::Direction::kForward);
      Residues fu = modconv::moddft(u, *t, modconv::Direction::kForward);
      const Residues fv = modconv::moddft(v, *t, modconv::Direction::kForward);
      for (std::size_t i = 0; i < n; ++i) fu[i] = f.mul(fu[i], fv[i]);
      o.expect(lhs == fu, [&] { return "N=" + std::to_string(n); });
    }
    const Vec u = oracle::random_vec(rng, n, kLarge);
    o.expect(modconv::moddft(u, *t, modconv::Direction::kForward) ==
                 oracle::dft(u, t->root(), kLarge),
             [&] { return "moddft vs direct evaluation N=" + std::to_string(n); });
  }
}

void pointwise_contrast(Outcome& o) {
  for (std::uint64_t k = 4; k <= 12; ++k) {
    modconv::cli::SweepConfig cfg;
    cfg.n_min = cfg.n_max = (std::uint64_t{1} << k) + 1;
    cfg.engines = {modconv::Engine::kTft, modconv::Engine::kFftPad};
    cfg.reps = 1;
    const auto rows = modconv::cli::run_sweep(cfg);
    o.expect(rows.size() == 2 && rows[0].counters.pointwise_muls == cfg.n_min &&
                 rows[1].counters.pointwise_muls == std::uint64_t{2} << k,
             [&] { return "k=" + std::to_string(k); });
  }
}

std::uint64_t median_nanos(std::uint64_t n, modconv::Engine e, unsigned threads) {
  modconv::cli::SweepConfig cfg;
  cfg.n_min = cfg.n_max = n;
  cfg.engines = {e};
  cfg.threads = threads;
  cfg.reps = kTimingReps;
  return modconv::cli::run_sweep(cfg).at(0).nanos_median;
}

void smoothness(Outcome& o) {
  using modconv::Engine;
  for (unsigned threads : {1u, 4u}) {
    for (int k = 12; k <= 16; ++k) {
      const std::uint64_t lo = std::uint64_t{1} << k, hi = lo + 1;
      const double tft_lo = static_cast<double>(median_nanos(lo, Engine::kTft, threads));
      const double tft_hi = static_cast<double>(median_nanos(hi, Engine::kTft, threads));
      const double pad_lo = static_cast<double>(median_nanos(lo, Engine::kFftPad, threads));
      const double pad_hi = static_cast<double>(median_nanos(hi, Engine::kFftPad, threads));
      const double lhs = tft_hi / tft_lo;
      const double rhs = 0.5 * pad_hi / pad_lo + 1.0;
      std::printf("  threads=%u k=%d tft(2^k)=%.0fns tft(2^k+1)=%.0fns fft_pad(2^k)=%.0fns "
                  "fft_pad(2^k+1)=%.0fns ratio %.3f <= %.3f\n",
                  threads, k, tft_lo, tft_hi, pad_lo, pad_hi, lhs, rhs);
      o.expect(tft_hi < pad_hi, [&] {
        return "tft not faster than fft_pad at threads=" + std::to_string(threads) +
               " k=" + std::to_string(k);
      });
      o.expect(lhs <= rhs, [&] {
        return "ratio bound at threads=" + std::to_string(threads) + " k=" + std::to_string(k);
      });
    }
  }
}

modconv::PlanStore fuzz_store(std::mt19937_64& rng) {
  using modconv::PlanKind;
  modconv::PlanStore s;
  const std::uint32_t radices[] = {2, 4, 8};
  const PlanKind kinds[] = {PlanKind::kDft, PlanKind::kTft, PlanKind::kItft, PlanKind::kConv};
  const std::size_t entries = 1 + rng() % 100;
  while (s.size() < entries) {
    modconv::PlanEntry e;
    e.decomposition.base = radices[rng() % 3];
    for (std::size_t i = rng() % 7; i > 0; --i) e.decomposition.splits.push_back(radices[rng() % 3]);
    e.key.kind = kinds[rng() % 4];
    e.key.p = rng() >> 2;
    e.key.size = e.decomposition.size();
    e.key.n = 1 + rng() % e.key.size;
    e.key.z = rng() % (e.key.n + 1);
    e.key.threads = 1 + static_cast<unsigned>(rng() % 256);
    e.measured_nanos = rng();
    e.exec_signature = "cpu=fuzz " + std::to_string(rng()) + "|x;threads=" +
                       std::to_string(e.key.threads);
    s.insert(e);
  }
  return s;
}

void planner_contracts(Outcome& o) {
  using modconv::PlanKey;
  using modconv::PlanKind;
  modconv::Planner planner;
  modconv::PlanStore store;
  const std::string sig = modconv::exec_signature(1);

  const PlanKey key = PlanKey::canonical(PlanKind::kDft, kLarge, 256, 1);
  const auto fresh = planner.lookup(store, key, sig);
  o.expect(planner.searches() == 1 && store.size() == 1, [] { return "fresh search tier"; });
  const auto hit = planner.lookup(store, key, sig);
  o.expect(planner.searches() == 1 && hit == fresh && store.size() == 1,
           [] { return "exact hit tier"; });
  const modconv::PlanStore before = store;
  const auto clone = planner.lookup(store, key, sig + ";other");
  o.expect(planner.searches() == 1 && clone.exec_signature == sig + ";other" &&
               clone.decomposition == fresh.decomposition && store.size() == 2 &&
               *store.find(key, sig) == *before.find(key, sig),
           [] { return "signature-miss clone tier"; });

  for (PlanKind kind : {PlanKind::kDft, PlanKind::kTft, PlanKind::kItft, PlanKind::kConv}) {
    for (std::uint64_t size = 2; size <= 4096; size *= 2) {
      planner.lookup(store, PlanKey::canonical(kind, kLarge, size, 1), sig);
      planner.lookup(store, PlanKey::canonical(kind, kSmall, std::min<std::uint64_t>(size, 256), 1), sig);
    }
  }
  for (const auto& e : store.entries()) {
    o.expect(modconv::replay_plan(e, 17), [&] { return "replay " + modconv::format_entry(e); });
    if (e.key.kind == PlanKind::kTft || e.key.kind == PlanKind::kItft) {
      o.expect(modconv::plan_mirror(modconv::plan_mirror(e)) == e,
               [&] { return "mirror involution " + modconv::format_entry(e); });
    }
  }

  std::mt19937_64 rng(4);
  const auto path = std::filesystem::temp_directory_path() / "modconv_acceptance_plans.txt";
  for (int i = 0; i < 100; ++i) {
    const modconv::PlanStore s = fuzz_store(rng);
    std::stringstream text;
    modconv::write_store(text, s);
    o.expect(modconv::read_store(text) == s, [&] { return "stream round trip " + std::to_string(i); });
    modconv::store_save(s, path);
    o.expect(modconv::store_load(path) == s, [&] { return "file round trip " + std::to_string(i); });
  }
  std::filesystem::remove(path);
}

void split_engine(Outcome& o) {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {kSmall, kLarge}) {
    const modconv::FourierPrime f(p);
    for (std::uint64_t n = 4; n <= 256; n *= 2) {
      for (int trial = 0; trial < 20; ++trial) {
        const Vec u = oracle::random_vec(rng, n, p), v = oracle::random_vec(rng, n, p);
        const Residues want = modconv::circ_conv_def(f, u, v);
        o.expect(modconv::circ_conv_split(u, v, request(p)) == want,
                 [&] { return "2n=" + std::to_string(n) + " p=" + std::to_string(p); });
        if (trial == 0) {
          o.expect(want == oracle::folded(u, v, p, +1), [&] { return "definition 2n=" + std::to_string(n); });
        }
        auto [cyc, neg] = modconv::split_residues(f, u);
        o.expect(modconv::recombine_residues(f, cyc, neg) == u,
                 [&] { return "recombine(split) 2n=" + std::to_string(n); });
        const Vec a = oracle::random_vec(rng, n / 2, p), b = oracle::random_vec(rng, n / 2, p);
        o.expect(modconv::split_residues(f, modconv::recombine_residues(f, a, b)) ==
                     std::make_pair(a, b),
                 [&] { return "split(recombine) 2n=" + std::to_string(n); });
      }
    }
  }
}

}  // namespace

int main() {
  criterion(1, "oracle-equivalence", "exact", oracle_equivalence);
  Outcome rt, bf;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    roundtrips_and_bounds(rt, bf);
  } catch (const std::exception& e) {
    rt.pass = bf.pass = false;
    rt.detail = bf.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(2, "transform-roundtrips", "exact", rt, secs);
  criterion(3, "convolution-theorem", "exact", convolution_theorem);
  report(4, "butterfly-bounds", "<=n*log2(L)/2+L;full=(L/2)log2(L)", bf, 0.0);
  criterion(5, "pointwise-contrast", "exact", pointwise_contrast);
  criterion(6, "smoothness", "median of 21 runs; strict", smoothness);
  criterion(7, "planner-contracts", "exact", planner_contracts);
  criterion(8, "split-engine", "exact", split_engine);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures;
}
