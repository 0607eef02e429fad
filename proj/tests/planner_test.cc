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

#include <gtest/gtest.h>

#include <set>

#include "modconv/convolution.hpp"
#include "modconv/errors.hpp"
#include "oracles.hpp"

namespace modconv {
namespace {

constexpr std::uint64_t kP = 998244353;

PlannerOptions fake(std::function<std::uint64_t(const Decomposition&)> cost) {
  PlannerOptions o;
  o.timer = [cost](const PlanKey&, const Decomposition& d, const std::function<void()>& run) {
    run();
    return cost(d);
  };
  return o;
}

std::uint64_t constant(const Decomposition&) { return 100; }

TEST(PlanSearchTest, SizeTwoIsTheBaseCase) {
  Planner planner(fake(constant));
  const PlanEntry e = planner.search(PlanKey::canonical(PlanKind::kDft, kP, 2, 1), "s");
  EXPECT_TRUE(e.decomposition.splits.empty());
  EXPECT_EQ(e.decomposition.base, 2u);
  EXPECT_EQ(e.exec_signature, "s");
  EXPECT_EQ(planner.searches(), 1u);
}

TEST(PlanSearchTest, SizeEightCandidates) {
  const std::set<std::string> allowed = {"8", "2x4", "4x2", "2x2x2"};
  Planner planner;
  const PlanEntry e = planner.search(PlanKey::canonical(PlanKind::kDft, kP, 8, 1), "s");
  EXPECT_TRUE(allowed.count(e.decomposition.to_string())) << e.decomposition.to_string();
  for (const auto& c : planner.trace()) {
    if (c.key.size == 8) {
      EXPECT_TRUE(allowed.count(c.decomposition.to_string()));
    }
  }
}

TEST(PlanSearchTest, TiesPreferSmallRadicesFirst) {
  Planner planner(fake(constant));
  const PlanEntry e = planner.search(PlanKey::canonical(PlanKind::kDft, kP, 8, 1), "s");
  EXPECT_EQ(e.decomposition.to_string(), "2x2x2");
  EXPECT_EQ(e.measured_nanos, 100u);
}

TEST(PlanSearchTest, FollowsTheTimer) {
  // Cheapest: as few passes as possible, then prefer radix 4 at the root.
  auto cost = [](const Decomposition& d) {
    std::uint64_t c = 10 * (d.splits.size() + 1);
    if (!d.splits.empty() && d.splits.front() == 4) c -= 5;
    return c;
  };
  Planner planner(fake(cost));
  EXPECT_EQ(planner.search(PlanKey::canonical(PlanKind::kDft, kP, 8, 1), "s")
                .decomposition.to_string(),
            "8");
  EXPECT_EQ(planner.search(PlanKey::canonical(PlanKind::kDft, kP, 32, 1), "s")
                .decomposition.to_string(),
            "4x8");
  EXPECT_EQ(planner.search(PlanKey::canonical(PlanKind::kDft, kP, 256, 1), "s")
                .decomposition.to_string(),
            "4x8x8");
}

TEST(PlanSearchTest, BottomUpAndMinimal) {
  Planner planner;
  const PlanKey key = PlanKey::canonical(PlanKind::kTft, kP, 1024, 1);
  const PlanEntry e = planner.search(key, "s");
  std::uint64_t last = 0;
  std::map<std::uint64_t, std::uint64_t> fastest;
  for (const auto& c : planner.trace()) {
    EXPECT_GE(c.key.size, last);
    last = c.key.size;
    auto [it, fresh] = fastest.emplace(c.key.size, c.median_nanos);
    if (!fresh) it->second = std::min(it->second, c.median_nanos);
  }
  EXPECT_EQ(fastest.size(), 10u);
  EXPECT_EQ(e.measured_nanos, fastest.at(1024));
  EXPECT_TRUE(replay_plan(e, 3));
}

TEST(PlanSearchTest, NonCanonicalKeys) {
  Planner planner(fake(constant));
  PlanKey key{PlanKind::kTft, kP, 256, 70, 130, 1};
  const PlanEntry e = planner.search(key, "s");
  EXPECT_EQ(e.key, key);
  EXPECT_EQ(e.decomposition.size(), 256u);
  EXPECT_TRUE(replay_plan(e, 1));
  PlanKey conv{PlanKind::kConv, kP, 256, 0, 200, 2};
  EXPECT_TRUE(replay_plan(planner.search(conv, "s"), 5));
}

TEST(PlanSearchTest, Errors) {
  Planner planner(fake(constant));
  EXPECT_THROW(planner.search(PlanKey::canonical(PlanKind::kDft, 257, 512, 1), "s"),
               UnsupportedSizeError);
  EXPECT_THROW(planner.search(PlanKey::canonical(PlanKind::kDft, kP, 12, 1), "s"), UsageError);
  EXPECT_THROW(planner.search(PlanKey{PlanKind::kTft, kP, 16, 0, 4, 1}, "s"), UsageError);
  EXPECT_THROW(planner.search(PlanKey{PlanKind::kConv, kP, 16, 0, 4, 1}, "s"), UsageError);
  PlannerOptions bad = fake(constant);
  bad.candidates = [](std::uint64_t size, const std::map<std::uint64_t, Decomposition>&) {
    return std::vector<Decomposition>{{{}, static_cast<std::uint32_t>(size * 2)}};
  };
  Planner broken(bad);
  EXPECT_THROW(broken.search(PlanKey::canonical(PlanKind::kDft, kP, 4, 1), "s"), UsageError);
  PlannerOptions none = fake(constant);
  none.candidates = [](std::uint64_t, const std::map<std::uint64_t, Decomposition>&) {
    return std::vector<Decomposition>{};
  };
  Planner empty(none);
  EXPECT_THROW(empty.search(PlanKey::canonical(PlanKind::kDft, kP, 4, 1), "s"), Error);
}

TEST(PlanSearchTest, ExtrapolatesBeyondTheSearchRange) {
  PlannerOptions o = fake(constant);
  o.max_search_size = 64;
  Planner planner(o);
  const PlanEntry small = planner.search(PlanKey::canonical(PlanKind::kDft, kP, 64, 1), "s");
  const PlanEntry big = planner.search(PlanKey::canonical(PlanKind::kDft, kP, 4096, 1), "s");
  EXPECT_EQ(big.decomposition.size(), 4096u);
  const auto& bs = big.decomposition.splits;
  const auto& ss = small.decomposition.splits;
  ASSERT_GE(bs.size(), ss.size());
  EXPECT_TRUE(std::equal(ss.rbegin(), ss.rend(), bs.rbegin()));
  EXPECT_EQ(big.decomposition.base, small.decomposition.base);
  EXPECT_TRUE(replay_plan(big, 2));
  for (const auto& c : planner.trace()) {
    EXPECT_TRUE(c.key.size <= 64 || c.key.size == 4096);
  }
}

TEST(PlanLookupTest, ThreeTiers) {
  Planner planner(fake(constant));
  PlanStore store;
  const PlanKey key = PlanKey::canonical(PlanKind::kDft, kP, 64, 1);

  const PlanEntry fresh = planner.lookup(store, key, "sig-a");
  EXPECT_EQ(planner.searches(), 1u);
  EXPECT_EQ(store.size(), 1u);

  const PlanEntry hit = planner.lookup(store, key, "sig-a");
  EXPECT_EQ(planner.searches(), 1u);
  EXPECT_EQ(hit, fresh);
  EXPECT_EQ(store.size(), 1u);

  const PlanStore before = store;
  const PlanEntry clone = planner.lookup(store, key, "sig-b");
  EXPECT_EQ(planner.searches(), 1u);
  EXPECT_EQ(clone.exec_signature, "sig-b");
  EXPECT_EQ(clone.decomposition, fresh.decomposition);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(*store.find(key, "sig-a"), *before.find(key, "sig-a"));
  EXPECT_EQ(*store.find(key, "sig-b"), clone);
}

TEST(PlanLookupTest, ItftComesFromTheMirroredTft) {
  Planner planner(fake([](const Decomposition& d) { return d.splits.empty() ? 1 : d.splits[0]; }));
  PlanStore store;
  const PlanKey key = PlanKey::canonical(PlanKind::kItft, kP, 128, 1);
  const PlanEntry inv = planner.lookup(store, key, "s");
  EXPECT_EQ(inv.key, key);
  Planner again(fake([](const Decomposition& d) { return d.splits.empty() ? 1 : d.splits[0]; }));
  const PlanEntry fwd = again.search(PlanKey::canonical(PlanKind::kTft, kP, 128, 1), "s");
  EXPECT_EQ(inv.decomposition, mirrored(fwd.decomposition));
  EXPECT_TRUE(replay_plan(inv, 4));
}

TEST(PlanMirrorTest, ReversesAndInvolutes) {
  PlanEntry e;
  e.key = PlanKey::canonical(PlanKind::kTft, kP, 64, 1);
  e.decomposition = {{2, 4}, 8};
  e.exec_signature = "s";
  const PlanEntry m = plan_mirror(e);
  EXPECT_EQ(m.key.kind, PlanKind::kItft);
  EXPECT_EQ(m.decomposition, (Decomposition{{4, 2}, 8}));
  EXPECT_EQ(plan_mirror(m), e);
  e.key.kind = PlanKind::kDft;
  EXPECT_THROW(plan_mirror(e), UsageError);
  e.key.kind = PlanKind::kConv;
  EXPECT_THROW(plan_mirror(e), UsageError);
}

TEST(PlanMirrorTest, MirroredPairConvolves) {
  std::mt19937_64 rng(5);
  for (const Decomposition& fwd :
       {Decomposition{{2, 4}, 8}, Decomposition{{8, 2}, 4}, Decomposition{{4, 4, 2}, 2}}) {
    const oracle::Vec g = oracle::random_vec(rng, 40, kP), h = oracle::random_vec(rng, 25, kP);
    ConvRequest req{FourierPrime(kP)};
    const Decomposition inv = mirrored(fwd);
    req.forward_plan = &fwd;
    req.inverse_plan = &inv;
    EXPECT_EQ(conv_tft(g, h, req), oracle::linear(g, h, kP)) << fwd.to_string();
  }
}

TEST(ReplayTest, EveryStoredPlanIsCorrect) {
  Planner planner;
  PlanStore store;
  for (PlanKind kind : {PlanKind::kDft, PlanKind::kTft, PlanKind::kItft, PlanKind::kConv}) {
    for (std::uint64_t size = 2; size <= 2048; size *= 2) {
      planner.lookup(store, PlanKey::canonical(kind, kP, size, 1), "s");
    }
  }
  EXPECT_EQ(store.size(), 44u);
  for (const PlanEntry& e : store.entries()) {
    EXPECT_TRUE(replay_plan(e, 11)) << format_entry(e);
  }
}

}  // namespace
}  // namespace modconv
