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

#include "modconv/planner.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <random>

#include "modconv/convolution.hpp"
#include "modconv/errors.hpp"

namespace modconv {
namespace {

std::vector<std::uint32_t> order_key(const Decomposition& d) {
  std::vector<std::uint32_t> k = d.splits;
  k.push_back(d.base);
  return k;
}

void validate_key(const PlanKey& key) {
  if (key.size < 2 || !std::has_single_bit(key.size)) {
    throw UsageError("plan size must be a power of two >= 2");
  }
  if (key.threads == 0) throw UsageError("plan threads must be >= 1");
  switch (key.kind) {
    case PlanKind::kDft:
      if (key.z != 0 || key.n != key.size) {
        throw UsageError("dft keys use z = 0 and n = L");
      }
      break;
    case PlanKind::kTft:
      if (key.z < 1 || key.z > key.n || key.n > key.size) {
        throw UsageError("tft keys need 1 <= z <= n <= L");
      }
      break;
    case PlanKind::kItft:
      if (key.n < 1 || key.n > key.size) throw UsageError("itft keys need 1 <= n <= L");
      break;
    case PlanKind::kConv:
      if (key.z != 0 || key.n < 1 || next_pow2(key.n) != key.size) {
        throw UsageError("conv keys need z = 0 and L = next_pow2(n)");
      }
      break;
  }
}

// Fixed input and the transform it drives for one key.
class Workload {
 public:
  Workload(const PlanKey& key, std::uint64_t seed)
      : key_(key), field_(key.p), table_(twiddle_table(field_, key.size)) {
    std::mt19937_64 rng(seed ^ (key.size * 0x9e3779b97f4a7c15ULL) ^
                        static_cast<std::uint64_t>(key.kind));
    std::uniform_int_distribution<std::uint64_t> coeff(0, field_.modulus() - 1);
    input_.resize(key.kind == PlanKind::kConv ? key.n + 1 : key.size);
    for (auto& c : input_) c = coeff(rng);
    if (key.kind == PlanKind::kItft) {
      std::fill(input_.begin() + key.n, input_.end(), 0);
      xhat_ = tft(*table_, std::span<const std::uint64_t>(input_).first(key.n), key.n);
    }
    if (key.kind == PlanKind::kConv) {
      z1_ = (key.n + 1) / 2;
      z2_ = key.n + 1 - z1_;
    }
  }

  Residues run(const Decomposition* d) const {
    const ExecOptions opts{d, key_.threads, nullptr};
    const std::span<const std::uint64_t> in(input_);
    switch (key_.kind) {
      case PlanKind::kDft: {
        Residues a = input_;
        forward_to_bitrev(a, *table_, opts);
        return a;
      }
      case PlanKind::kTft:
        return tft(*table_, in.first(key_.z), key_.n, opts);
      case PlanKind::kItft:
        return itft(*table_, xhat_, opts);
      case PlanKind::kConv: {
        ConvRequest req{field_};
        req.threads = key_.threads;
        Decomposition inv;
        if (d != nullptr) {
          inv = mirrored(*d);
          req.forward_plan = d;
          req.inverse_plan = &inv;
        }
        return conv_tft(in.first(z1_), in.subspan(z1_, z2_), req);
      }
    }
    return {};
  }

  // Result computed without any fast transform.
  Residues reference() const {
    const std::span<const std::uint64_t> in(input_);
    switch (key_.kind) {
      case PlanKind::kDft:
        return bit_reverse_permute(reference_dft(in, *table_, Direction::kForward));
      case PlanKind::kTft: {
        Residues x(key_.size, 0);
        std::copy_n(input_.begin(), key_.z, x.begin());
        Residues y = bit_reverse_permute(reference_dft(x, *table_, Direction::kForward));
        y.resize(key_.n);
        return y;
      }
      case PlanKind::kItft: {
        Residues y(input_.begin(), input_.begin() + key_.n);
        const std::uint64_t scale = field_.reduce(key_.size);
        for (auto& v : y) v = field_.mul(v, scale);
        return y;
      }
      case PlanKind::kConv:
        return lin_conv_def(field_, in.first(z1_), in.subspan(z1_, z2_));
    }
    return {};
  }

 private:
  PlanKey key_;
  FourierPrime field_;
  std::shared_ptr<const TwiddleTable> table_;
  Residues input_;
  Residues xhat_;
  std::uint64_t z1_ = 0, z2_ = 0;
};

Decomposition extend(const Decomposition& d, std::uint64_t size) {
  Decomposition out = d;
  const std::uint64_t factor = size / d.size();
  if (factor < 2) return out;
  Decomposition lead = default_decomposition(factor);
  lead.splits.push_back(lead.base);
  out.splits.insert(out.splits.begin(), lead.splits.begin(), lead.splits.end());
  return out;
}

}  // namespace

std::vector<Decomposition> default_candidates(
    std::uint64_t size, const std::map<std::uint64_t, Decomposition>& best) {
  std::vector<Decomposition> out;
  if (size <= 8) out.push_back(Decomposition{{}, static_cast<std::uint32_t>(size)});
  for (std::uint32_t r : kRadixMenu) {
    if (r > size / 2) break;
    auto it = best.find(size / r);
    if (it == best.end()) continue;
    Decomposition d = it->second;
    d.splits.insert(d.splits.begin(), r);
    out.push_back(std::move(d));
  }
  return out;
}

std::uint64_t wall_clock_timer(const PlanKey&, const Decomposition&,
                               const std::function<void()>& run) {
  const auto t0 = std::chrono::steady_clock::now();
  run();
  const auto t1 = std::chrono::steady_clock::now();
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

Planner::Planner(PlannerOptions options) : options_(std::move(options)) {
  if (options_.reps < 1) throw UsageError("planner reps must be >= 1");
  if (!options_.timer) options_.timer = wall_clock_timer;
  if (!options_.candidates) options_.candidates = default_candidates;
}

std::uint64_t Planner::time_candidate(const PlanKey& key, const Decomposition& d) {
  const Workload work(key, options_.seed);
  const Residues got = work.run(&d);
  const Residues want = key.size <= options_.reference_cap ? work.reference()
                                                           : work.run(nullptr);
  if (got != want) {
    throw Error("plan candidate " + d.to_string() + " for " +
                std::string(to_string(key.kind)) + " L=" + std::to_string(key.size) +
                " computes a wrong transform");
  }
  std::vector<std::uint64_t> samples;
  samples.reserve(options_.reps);
  const std::function<void()> run = [&] { (void)work.run(&d); };
  for (int i = 0; i < options_.reps; ++i) {
    samples.push_back(options_.timer(key, d, run));
  }
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  const std::uint64_t median = samples[samples.size() / 2];
  trace_.push_back({key, d, median});
  return median;
}

Decomposition Planner::best_for(const PlanKey& key, std::uint64_t* nanos) {
  auto& fixed = memo_[Family{key.kind, key.p, key.threads}];
  const std::uint64_t top = std::min(key.size, options_.max_search_size);
  const bool canonical_top =
      key == PlanKey::canonical(key.kind, key.p, key.size, key.threads);

  std::map<std::uint64_t, Decomposition> best;
  for (const auto& [s, win] : fixed) best.emplace(s, win.first);

  auto choose = [&](const PlanKey& k) {
    std::optional<std::pair<Decomposition, std::uint64_t>> win;
    for (const Decomposition& d : options_.candidates(k.size, best)) {
      validate_decomposition(d, k.size);
      const std::uint64_t t = time_candidate(k, d);
      if (!win || t < win->second ||
          (t == win->second && order_key(d) < order_key(win->first))) {
        win.emplace(d, t);
      }
    }
    if (!win) {
      throw Error("no plan candidates for size " + std::to_string(k.size));
    }
    return *win;
  };

  for (std::uint64_t s = 2; s <= top; s *= 2) {
    if (fixed.count(s)) continue;
    if (s == key.size && !canonical_top) break;
    const PlanKey sub = s == key.size && key.kind == PlanKind::kConv
                            ? key
                            : PlanKey::canonical(key.kind, key.p, s, key.threads);
    auto win = choose(sub);
    fixed.emplace(s, win);
    best.emplace(s, win.first);
  }

  if (key.size <= options_.max_search_size) {
    if (canonical_top) {
      *nanos = fixed.at(key.size).second;
      return fixed.at(key.size).first;
    }
    auto win = choose(key);
    *nanos = win.second;
    return win.first;
  }

  const Decomposition d = extend(fixed.at(top).first, key.size);
  *nanos = time_candidate(key, d);
  return d;
}

PlanEntry Planner::search(const PlanKey& key, const std::string& signature) {
  validate_key(key);
  const FourierPrime field(key.p);
  if (!field.supports_size(key.size)) {
    throw UnsupportedSizeError("p=" + std::to_string(key.p) + " has no root of unity of order " +
                               std::to_string(key.size));
  }
  ++searches_;
  PlanEntry entry;
  entry.key = key;
  entry.exec_signature = signature;
  entry.decomposition = best_for(key, &entry.measured_nanos);
  return entry;
}

PlanEntry Planner::lookup(PlanStore& store, const PlanKey& key,
                          const std::string& signature) {
  if (const PlanEntry* hit = store.find(key, signature)) return *hit;
  if (const PlanEntry* any = store.find_any(key)) {
    PlanEntry clone = *any;
    clone.exec_signature = signature;
    store.insert(clone);
    return clone;
  }
  PlanEntry fresh;
  if (key.kind == PlanKind::kItft) {
    PlanKey fwd = key;
    fwd.kind = PlanKind::kTft;
    fwd.z = key.n;
    fresh = plan_mirror(search(fwd, signature));
    fresh.key = key;
  } else {
    fresh = search(key, signature);
  }
  store.insert(fresh);
  return fresh;
}

PlanEntry plan_mirror(const PlanEntry& entry) {
  PlanEntry out = entry;
  switch (entry.key.kind) {
    case PlanKind::kTft:
      out.key.kind = PlanKind::kItft;
      break;
    case PlanKind::kItft:
      out.key.kind = PlanKind::kTft;
      break;
    default:
      throw UsageError("plan_mirror needs a tft or itft entry, got " +
                       std::string(to_string(entry.key.kind)));
  }
  out.decomposition = mirrored(entry.decomposition);
  return out;
}

bool replay_plan(const PlanEntry& entry, std::uint64_t seed) {
  validate_key(entry.key);
  validate_decomposition(entry.decomposition, entry.key.size);
  const Workload work(entry.key, seed);
  const Residues got = work.run(&entry.decomposition);
  const Residues want = entry.key.size <= 1024 ? work.reference() : work.run(nullptr);
  return got == want;
}

}  // namespace modconv
