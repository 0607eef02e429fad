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

#ifndef MODCONV_PLANNER_HPP_
#define MODCONV_PLANNER_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "modconv/plan_store.hpp"
#include "modconv/transform.hpp"

namespace modconv {

// Nanoseconds taken by one call of run for candidate d of key.
using PlanTimer = std::function<std::uint64_t(
    const PlanKey& key, const Decomposition& d, const std::function<void()>& run)>;

// Candidates for size, given the winners already fixed for smaller sizes.
using CandidateEnumerator = std::function<std::vector<Decomposition>(
    std::uint64_t size, const std::map<std::uint64_t, Decomposition>& best)>;

// Base case when size <= 8, plus r x best(size / r) for r in the radix menu.
std::vector<Decomposition> default_candidates(
    std::uint64_t size, const std::map<std::uint64_t, Decomposition>& best);

// steady_clock around one run.
std::uint64_t wall_clock_timer(const PlanKey& key, const Decomposition& d,
                               const std::function<void()>& run);

struct PlannerOptions {
  PlanTimer timer = wall_clock_timer;
  CandidateEnumerator candidates = default_candidates;
  int reps = 5;
  // Sizes above this reuse the shape of the plan at this size.
  std::uint64_t max_search_size = std::uint64_t{1} << 20;
  // Candidates up to this size are checked against the O(N^2) transform,
  // larger ones against the default decomposition.
  std::uint64_t reference_cap = 256;
  std::uint64_t seed = 0x6d6f64636f6e76ULL;
};

struct CandidateTiming {
  PlanKey key;
  Decomposition decomposition;
  std::uint64_t median_nanos = 0;
};

class Planner {
 public:
  explicit Planner(PlannerOptions options = {});

  // Bottom-up search over every power of two up to key.size. Throws
  // UnsupportedSizeError when p cannot host key.size, UsageError for a
  // malformed key and Error when a candidate computes a wrong transform.
  PlanEntry search(const PlanKey& key, const std::string& signature);

  // Exact (key, signature) hit; else a key-only hit cloned under signature
  // and inserted; else a fresh search, inserted. itft keys are searched
  // through the matching tft key and mirrored.
  PlanEntry lookup(PlanStore& store, const PlanKey& key, const std::string& signature);

  // Number of search() calls so far, including those made by lookup().
  std::size_t searches() const { return searches_; }

  // Every candidate timed so far, in evaluation order.
  const std::vector<CandidateTiming>& trace() const { return trace_; }

 private:
  using Family = std::tuple<PlanKind, std::uint64_t, unsigned>;

  std::uint64_t time_candidate(const PlanKey& key, const Decomposition& d);
  Decomposition best_for(const PlanKey& key, std::uint64_t* nanos);

  PlannerOptions options_;
  std::size_t searches_ = 0;
  std::vector<CandidateTiming> trace_;
  // Winners of canonical sub-problems, reused across searches.
  std::map<Family, std::map<std::uint64_t, std::pair<Decomposition, std::uint64_t>>> memo_;
};

// tft <-> itft with the split sequence reversed and the same base case.
// Throws UsageError for dft and conv entries.
PlanEntry plan_mirror(const PlanEntry& entry);

// Executes the plan once on pseudo-random input and compares the result with
// an oracle. True when bit-identical.
bool replay_plan(const PlanEntry& entry, std::uint64_t seed);

}  // namespace modconv

#endif  // MODCONV_PLANNER_HPP_
