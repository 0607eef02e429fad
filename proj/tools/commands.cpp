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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "modconv/errors.hpp"
#include "modconv/plan_store.hpp"
#include "modconv/polyring.hpp"

namespace modconv::cli {
namespace {

DensePoly load_poly(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return read_poly(in);
}

// Maps library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const VersionError& e) {
    err << "version error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedSizeError& e) {
    err << "unsupported size: " << e.what() << '\n';
    return kUnsupportedSize;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

PlanStore load_store_or_empty(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return PlanStore{};
  return store_load(path);
}

FourierPrime sweep_prime(const SweepConfig& cfg) {
  if (cfg.prime && cfg.prime_bits) throw UsageError("give --prime or --prime-bits, not both");
  if (cfg.prime_bits) {
    const int bits = *cfg.prime_bits;
    const int want = std::bit_width(next_pow2(cfg.n_max)) - 1;
    return find_fourier_prime(std::clamp(want, 1, std::max(1, bits - 2)), bits);
  }
  return FourierPrime(cfg.prime.value_or(998244353));
}

Residues random_operand(const FourierPrime& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, f.modulus() - 1);
  Residues v(n);
  for (auto& x : v) x = d(rng);
  if (v.back() == 0) v.back() = 1;
  return v;
}

bool feasible(const FourierPrime& f, Engine e, std::uint64_t n) {
  if (e == Engine::kDefinition) return true;
  return f.supports_size(std::max<std::uint64_t>(2, next_pow2(n)));
}

}  // namespace

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const auto results = run_verification(options);
  out << format_report(results);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const SuiteResult& r) { return r.passed; });
  return ok ? kOk : kVerifyFailed;
}

int cmd_mul(const MulArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DensePoly a = load_poly(args.a);
    const DensePoly b = load_poly(args.b);
    if (!(a.field() == b.field())) {
      err << "modulus mismatch: " << a.field().modulus() << " vs " << b.field().modulus()
          << '\n';
      return int{kModulusMismatch};
    }
    ConvRequest req{a.field()};
    req.engine = args.engine;
    req.threads = args.threads;
    req.signature = exec_signature(args.threads);
    PlanStore store;
    if (args.engine == Engine::kAuto) {
      if (args.store) store = load_store_or_empty(*args.store);
      const auto da = a.degree(), db = b.degree();
      if (da && db) {
        const std::uint64_t size = next_pow2(*da + *db + 1);
        if (size >= 2) {
          if (!a.field().supports_size(size)) {
            throw UnsupportedSizeError("product needs a transform of " +
                                       std::to_string(size));
          }
          Planner planner;
          planner.lookup(store,
                         PlanKey::canonical(PlanKind::kConv, a.field().modulus(), size,
                                            args.threads),
                         req.signature);
        }
      }
      req.plans = &store;
    }
    const DensePoly c = poly_mul(a, b, req);
    if (args.out) {
      std::ofstream file(*args.out, std::ios::trunc);
      if (!file) throw IoError("cannot write " + args.out->string());
      write_poly(file, c);
      if (!file.flush()) throw IoError("write failed for " + args.out->string());
    } else {
      write_poly(out, c);
    }
    return int{kOk};
  });
}

int cmd_plan(const PlanArgs& args, Planner& planner, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.max_l < 2 || !std::has_single_bit(args.max_l)) {
      throw UsageError("--max-l must be a power of two >= 2");
    }
    if (args.threads < 1) throw UsageError("--threads must be >= 1");
    PlanStore store = load_store_or_empty(args.store);
    const std::size_t before = planner.searches();
    const std::string sig = exec_signature(args.threads);
    for (PlanKind kind : {PlanKind::kDft, PlanKind::kTft, PlanKind::kItft, PlanKind::kConv}) {
      for (std::uint64_t size = 2; size <= args.max_l; size *= 2) {
        planner.lookup(store, PlanKey::canonical(kind, args.prime, size, args.threads), sig);
      }
    }
    store_save(store, args.store);
    out << "entries " << store.size() << "\nsearches " << planner.searches() - before
        << '\n';
    return int{kOk};
  });
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw UsageError("need 1 <= min <= max");
  if (cfg.step < 1) throw UsageError("--step must be >= 1");
  if (cfg.reps < 1) throw UsageError("--reps must be >= 1");
  if (cfg.threads < 1) throw UsageError("--threads must be >= 1");
  const FourierPrime f = sweep_prime(cfg);
  const std::string sig = exec_signature(cfg.threads);

  PlanStore store;
  if (cfg.store) store = load_store_or_empty(*cfg.store);
  std::optional<Planner> planner;

  std::vector<SweepRow> rows;
  std::mt19937_64 rng(cfg.seed);
  for (std::uint64_t n = cfg.n_min; n <= cfg.n_max; n += cfg.step) {
    const std::uint64_t z1 = (n + 2) / 2;
    const std::uint64_t z2 = n + 1 - z1;
    for (Engine e : cfg.engines) {
      SweepRow row;
      row.n = n;
      row.engine = e;
      row.threads = cfg.threads;
      if (!feasible(f, e, n)) {
        row.feasible = false;
        rows.push_back(row);
        continue;
      }
      const DensePoly g(f, random_operand(f, z1, rng));
      const DensePoly h(f, random_operand(f, z2, rng));
      ConvRequest req{f};
      req.engine = e;
      req.threads = cfg.threads;
      req.signature = sig;
      if (e == Engine::kAuto) {
        if (!planner) planner.emplace();
        const std::uint64_t size = next_pow2(n);
        if (size >= 2) {
          planner->lookup(store, PlanKey::canonical(PlanKind::kConv, f.modulus(), size,
                                                    cfg.threads), sig);
        }
        req.plans = &store;
      }
      req.counters = &row.counters;
      (void)poly_mul(g, h, req);
      req.counters = nullptr;

      std::vector<std::uint64_t> samples(cfg.reps);
      for (auto& t : samples) {
        const auto t0 = std::chrono::steady_clock::now();
        (void)poly_mul(g, h, req);
        const auto t1 = std::chrono::steady_clock::now();
        t = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      }
      std::uint64_t total = 0;
      for (auto t : samples) total += t;
      row.nanos_mean = total / samples.size();
      std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
      row.nanos_median = samples[samples.size() / 2];
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << to_string(r.engine) << ',' << r.threads << ',';
    if (r.feasible) {
      out << r.nanos_median << ',' << r.nanos_mean << ',' << r.counters.butterflies << ','
          << r.counters.pointwise_muls << '\n';
    } else {
      out << "-1,-1,-1,-1\n";
    }
  }
}

int cmd_sweep(const SweepConfig& cfg, const std::optional<std::filesystem::path>& csv,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = run_sweep(cfg);
    if (csv) {
      std::ofstream file(*csv, std::ios::trunc);
      if (!file) throw IoError("cannot write " + csv->string());
      write_csv(file, rows);
      if (!file.flush()) throw IoError("write failed for " + csv->string());
    } else {
      write_csv(out, rows);
    }
    return int{kOk};
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact polynomial multiplication over prime fields"};
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run the oracle suites");
  v->add_option("--seed", verify.seed, "Random seed");
  v->add_option("--cap", verify.cap, "Largest transform length")->check(CLI::PositiveNumber);
  v->add_flag("--inject-fault", verify.inject_fault, "Corrupt one twiddle factor")
      ->group("");

  MulArgs mul;
  std::string mul_engine = "tft";
  std::string mul_out;
  std::string mul_store;
  auto* m = app.add_subcommand("mul", "Multiply two polynomial files");
  m->add_option("A", mul.a, "First operand")->required();
  m->add_option("B", mul.b, "Second operand")->required();
  m->add_option("--engine", mul_engine, "definition|fft_pad|tft|split|auto");
  m->add_option("-o,--output", mul_out, "Output file (default stdout)");
  m->add_option("--threads", mul.threads, "Worker threads")->check(CLI::PositiveNumber);
  m->add_option("--store", mul_store, "Plan store consulted by --engine auto");

  PlanArgs plan;
  std::string plan_store;
  auto* p = app.add_subcommand("plan", "Populate a plan store");
  p->add_option("--store", plan_store, "Plan file")->required();
  p->add_option("--max-l", plan.max_l, "Largest transform length");
  p->add_option("--threads", plan.threads, "Worker threads")->check(CLI::PositiveNumber);
  p->add_option("--prime", plan.prime, "Modulus");

  SweepConfig sweep;
  std::string sweep_engines = "fft_pad,tft";
  std::string sweep_out;
  std::string sweep_store;
  auto* s = app.add_subcommand("sweep", "Time engines over a range of product lengths");
  s->add_option("--min", sweep.n_min, "Smallest product length")->required();
  s->add_option("--max", sweep.n_max, "Largest product length")->required();
  s->add_option("--step", sweep.step, "Stride between lengths");
  s->add_option("--engines", sweep_engines, "Comma-separated engines");
  auto* prime_opt = s->add_option("--prime", sweep.prime, "Modulus");
  s->add_option("--prime-bits", sweep.prime_bits, "Bit length of a generated prime")
      ->excludes(prime_opt);
  s->add_option("--threads", sweep.threads, "Worker threads")->check(CLI::PositiveNumber);
  s->add_option("--reps", sweep.reps, "Timed repetitions")->check(CLI::PositiveNumber);
  s->add_option("--seed", sweep.seed, "Random seed");
  s->add_option("-o,--output", sweep_out, "CSV file (default stdout)");
  s->add_option("--store", sweep_store, "Plan store consulted by the auto engine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << '\n';
    return kUsage;
  }

  if (*v) return cmd_verify(verify, out);
  if (*m) {
    const auto engine = parse_engine(mul_engine);
    if (!engine) {
      err << "unknown engine '" << mul_engine << "'\n";
      return kUsage;
    }
    mul.engine = *engine;
    if (!mul_out.empty()) mul.out = mul_out;
    if (!mul_store.empty()) mul.store = mul_store;
    return cmd_mul(mul, out, err);
  }
  if (*p) {
    plan.store = plan_store;
    Planner planner;
    return cmd_plan(plan, planner, out, err);
  }
  sweep.engines.clear();
  std::stringstream list(sweep_engines);
  for (std::string item; std::getline(list, item, ',');) {
    const auto engine = parse_engine(item);
    if (!engine) {
      err << "unknown engine '" << item << "'\n";
      return kUsage;
    }
    sweep.engines.push_back(*engine);
  }
  if (sweep.engines.empty()) {
    err << "--engines is empty\n";
    return kUsage;
  }
  if (!sweep_store.empty()) sweep.store = sweep_store;
  std::optional<std::filesystem::path> csv;
  if (!sweep_out.empty()) csv = sweep_out;
  return cmd_sweep(sweep, csv, out, err);
}

}  // namespace modconv::cli
