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

#include "modconv/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "modconv/convolution.hpp"
#include "modconv/errors.hpp"
#include "modconv/modfield.hpp"
#include "modconv/plan_store.hpp"
#include "modconv/planner.hpp"
#include "modconv/polyring.hpp"
#include "modconv/transform.hpp"

namespace modconv {
namespace {

constexpr std::uint64_t kSmallPrime = 257;
constexpr std::uint64_t kLargePrime = 998244353;

class Suite {
 public:
  Suite(std::string name, std::uint64_t seed)
      : rng_(seed ^ std::hash<std::string>{}(name)) {
    result_.name = std::move(name);
  }

  void check(bool ok, const std::function<std::string()>& what) {
    ++result_.checks;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.first_failure = what();
    }
  }

  Residues random(const FourierPrime& f, std::size_t n) {
    std::uniform_int_distribution<std::uint64_t> d(0, f.modulus() - 1);
    Residues v(n);
    for (auto& x : v) x = d(rng_);
    return v;
  }

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }

  SuiteResult finish() { return std::move(result_); }

 private:
  std::mt19937_64 rng_;
  SuiteResult result_;
};

std::vector<FourierPrime> primes() {
  return {FourierPrime(kSmallPrime), FourierPrime(kLargePrime)};
}

std::uint64_t cap_for(const FourierPrime& f, std::uint64_t cap) {
  return std::min<std::uint64_t>(cap, std::uint64_t{1} << std::min(f.two_adicity(), 62));
}

SuiteResult modfield_suite(const VerifyOptions& o) {
  Suite s("modfield", o.seed);
  for (const FourierPrime& f : primes()) {
    const Residues a = s.random(f, 64), b = s.random(f, 64), c = s.random(f, 64);
    for (std::size_t i = 0; i < a.size(); ++i) {
      s.check(f.mul(a[i], f.add(b[i], c[i])) ==
                  f.add(f.mul(a[i], b[i]), f.mul(a[i], c[i])),
              [&] { return "distributivity at p=" + std::to_string(f.modulus()); });
      if (a[i] != 0) {
        s.check(f.mul(a[i], f.inv(a[i])) == 1,
                [&] { return "inverse of " + std::to_string(a[i]); });
      }
      s.check(f.add(f.half(a[i]), f.half(a[i])) == a[i], [&] { return "half"; });
    }
    for (std::uint64_t n = 2; n <= cap_for(f, o.cap); n *= 2) {
      const std::uint64_t w = root_of_unity(f, n).value();
      s.check(f.pow(w, n) == 1 && f.pow(w, n / 2) == f.modulus() - 1,
              [&] { return "root of unity of order " + std::to_string(n); });
    }
  }
  return s.finish();
}

SuiteResult polyring_suite(const VerifyOptions& o) {
  Suite s("polyring", o.seed);
  for (const FourierPrime& f : primes()) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t la = s.uniform(1, std::min<std::uint64_t>(o.cap, 96));
      const std::size_t lb = s.uniform(1, std::min<std::uint64_t>(o.cap, 96));
      const DensePoly a(f, s.random(f, la)), b(f, s.random(f, lb));
      s.check(mul_karatsuba(a, b, 2) == mul_schoolbook(a, b),
              [&] { return "karatsuba " + std::to_string(la) + "x" + std::to_string(lb); });
      const Felt x(f, s.uniform(0, f.modulus() - 1));
      s.check(eval(mul_schoolbook(a, b), x) == eval(a, x) * eval(b, x),
              [&] { return "evaluation homomorphism"; });
    }
  }
  return s.finish();
}

SuiteResult transform_suite(const VerifyOptions& o) {
  Suite s("transform", o.seed);
  for (const FourierPrime& f : primes()) {
    for (std::uint64_t n = 2; n <= cap_for(f, o.cap); n *= 2) {
      const auto pristine = twiddle_table(f, n);
      TwiddleTable table = *pristine;
      if (o.inject_fault && n >= 16) corrupt_twiddle_for_testing(table, 1);
      const Residues x = s.random(f, n);
      const Residues fx = moddft(x, table, Direction::kForward);
      if (n <= 1024) {
        s.check(fx == reference_dft(x, *pristine, Direction::kForward),
                [&] { return "moddft vs definition, N=" + std::to_string(n); });
      }
      s.check(moddft(fx, table, Direction::kInverse) == x,
              [&] { return "inverse(forward) at N=" + std::to_string(n); });
      for (std::uint32_t r : kRadixMenu) {
        if (r > n / 2) break;
        s.check(moddft_ct_step(x, r, n / r, table, Direction::kForward) == fx,
                [&] { return "radix-" + std::to_string(r) + " step, N=" + std::to_string(n); });
      }
      OpCounters c;
      (void)moddft(x, table, Direction::kForward, {nullptr, 1, &c});
      const std::uint64_t logn = std::countr_zero(n);
      s.check(c.butterflies == n / 2 * logn,
              [&] { return "butterfly count at N=" + std::to_string(n); });
    }
  }
  return s.finish();
}

SuiteResult tft_suite(const VerifyOptions& o) {
  Suite s("tft", o.seed);
  for (const FourierPrime& f : primes()) {
    for (std::uint64_t size = 1; size <= std::min<std::uint64_t>(cap_for(f, o.cap), 256);
         size *= 2) {
      const auto table = twiddle_table(f, size);
      const std::uint64_t logl = std::countr_zero(size);
      for (std::uint64_t n = 1; n <= size; ++n) {
        const Residues x = s.random(f, n);
        OpCounters fc, ic;
        const Residues xhat = tft(*table, x, n, {nullptr, 1, &fc});
        const Residues back = itft(*table, xhat, {nullptr, 1, &ic});
        Residues want = x;
        for (auto& v : want) v = f.mul(v, f.reduce(size));
        s.check(back == want, [&] {
          return "itft(tft) at L=" + std::to_string(size) + " n=" + std::to_string(n);
        });
        const std::uint64_t bound = n * logl / 2 + size;
        s.check(fc.butterflies <= bound && ic.butterflies <= bound, [&] {
          return "butterfly bound at L=" + std::to_string(size) + " n=" + std::to_string(n);
        });
        if (size >= 2 && size <= 64) {
          Residues padded = x;
          padded.resize(size, 0);
          Residues full = bit_reverse_permute(reference_dft(padded, *table, Direction::kForward));
          full.resize(n);
          s.check(xhat == full, [&] {
            return "tft vs definition at L=" + std::to_string(size) + " n=" + std::to_string(n);
          });
        }
      }
    }
  }
  return s.finish();
}

SuiteResult convolution_suite(const VerifyOptions& o) {
  Suite s("convolution", o.seed);
  for (const FourierPrime& f : primes()) {
    const std::uint64_t cap = cap_for(f, o.cap);
    for (int trial = 0; trial < 60; ++trial) {
      const std::uint64_t z1 = s.uniform(1, std::max<std::uint64_t>(1, cap / 2));
      const std::uint64_t z2 = s.uniform(1, std::max<std::uint64_t>(1, cap / 2));
      const DensePoly a(f, s.random(f, z1)), b(f, s.random(f, z2));
      const DensePoly want = normalize(mul_schoolbook(a, b));
      for (Engine e : {Engine::kDefinition, Engine::kFftPad, Engine::kTft, Engine::kSplit}) {
        ConvRequest req{f};
        req.engine = e;
        if (next_pow2(z1 + z2 - 1) > cap) continue;
        s.check(poly_mul(a, b, req) == want, [&] {
          return std::string(to_string(e)) + " product " + std::to_string(z1) + "x" +
                 std::to_string(z2) + " at p=" + std::to_string(f.modulus());
        });
      }
    }
    for (std::uint64_t n = 2; n <= cap; n *= 2) {
      const Residues u = s.random(f, n), v = s.random(f, n);
      const ConvRequest req{f};
      const auto table = twiddle_table(f, n);
      Residues lhs = moddft(circ_conv_def(f, u, v), *table, Direction::kForward);
      Residues fu = moddft(u, *table, Direction::kForward);
      const Residues fv = moddft(v, *table, Direction::kForward);
      for (std::size_t i = 0; i < n; ++i) fu[i] = f.mul(fu[i], fv[i]);
      s.check(lhs == fu, [&] { return "convolution theorem at N=" + std::to_string(n); });
      s.check(circ_conv_fft(u, v, req) == circ_conv_def(f, u, v),
              [&] { return "circ_conv_fft at N=" + std::to_string(n); });
      if (n >= 4) {
        s.check(circ_conv_split(u, v, req) == circ_conv_def(f, u, v),
                [&] { return "circ_conv_split at 2n=" + std::to_string(n); });
        auto [cyc, neg] = split_residues(f, u);
        s.check(recombine_residues(f, cyc, neg) == u,
                [&] { return "split/recombine at 2n=" + std::to_string(n); });
      }
    }
  }
  return s.finish();
}

SuiteResult planner_suite(const VerifyOptions& o) {
  Suite s("planner", o.seed);
  PlannerOptions po;
  po.seed = o.seed;
  po.reps = 1;
  // Deterministic cost model: fewer passes are cheaper.
  po.timer = [](const PlanKey&, const Decomposition& d, const std::function<void()>&) {
    return static_cast<std::uint64_t>(d.splits.size() + 1);
  };
  Planner planner(po);
  PlanStore store;
  const std::string sig = "verify";
  const std::uint64_t top = std::min<std::uint64_t>(o.cap, 256);
  for (PlanKind kind : {PlanKind::kDft, PlanKind::kTft, PlanKind::kItft, PlanKind::kConv}) {
    for (std::uint64_t n = 2; n <= top; n *= 2) {
      const PlanEntry e =
          planner.lookup(store, PlanKey::canonical(kind, kLargePrime, n, 1), sig);
      s.check(replay_plan(e, o.seed), [&] {
        return std::string(to_string(kind)) + " plan replay at L=" + std::to_string(n);
      });
      if (kind == PlanKind::kTft || kind == PlanKind::kItft) {
        s.check(plan_mirror(plan_mirror(e)) == e, [&] { return "mirror involution"; });
      }
    }
  }
  std::stringstream text;
  write_store(text, store);
  s.check(read_store(text) == store, [&] { return "plan store round trip"; });
  return s.finish();
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  using SuiteFn = SuiteResult (*)(const VerifyOptions&);
  const std::pair<const char*, SuiteFn> suites[] = {
      {"modfield", modfield_suite},       {"polyring", polyring_suite},
      {"transform", transform_suite},     {"tft", tft_suite},
      {"convolution", convolution_suite}, {"planner", planner_suite},
  };
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : suites) {
    try {
      out.push_back(fn(options));
    } catch (const std::exception& e) {
      out.push_back(SuiteResult{name, false, 0, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

std::string format_report(const std::vector<SuiteResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    if (r.passed) {
      out << r.name << " PASS " << r.checks << " checks\n";
    } else {
      out << r.name << " FAIL " << r.first_failure << '\n';
    }
  }
  return out.str();
}

}  // namespace modconv
