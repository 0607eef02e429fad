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

#ifndef MODCONV_PLAN_STORE_HPP_
#define MODCONV_PLAN_STORE_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modconv/transform.hpp"

namespace modconv {

enum class PlanKind { kDft, kTft, kItft, kConv };

std::string_view to_string(PlanKind kind);
std::optional<PlanKind> parse_plan_kind(std::string_view text);

// Function signature of a plan: what is transformed, over which prime, at
// which size and thread count.
struct PlanKey {
  PlanKind kind = PlanKind::kDft;
  std::uint64_t p = 0;
  std::uint64_t size = 0;  // transform length L
  std::uint64_t z = 0;     // input length for tft, else 0
  std::uint64_t n = 0;     // truncation length, or the size
  unsigned threads = 1;

  // The key used for whole size classes: dft/conv -> (z=0, n=L),
  // tft/itft -> (z=L, n=L).
  static PlanKey canonical(PlanKind kind, std::uint64_t p, std::uint64_t size,
                           unsigned threads);

  friend auto operator<=>(const PlanKey&, const PlanKey&) = default;
};

struct PlanEntry {
  PlanKey key;
  Decomposition decomposition;
  std::uint64_t measured_nanos = 0;
  std::string exec_signature;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

// Splits in reverse order, same base case.
Decomposition mirrored(const Decomposition& d);

// Host descriptor: cpu model, logical cores, thread setting, build id.
std::string exec_signature(unsigned threads);

// Plans keyed by (PlanKey, exec_signature), at most one entry per pair.
// Readers may share a const store; inserts need exclusive access.
class PlanStore {
 public:
  static constexpr std::string_view kHeader = "modconv-plan v1";
  static constexpr int kVersion = 1;

  int version() const { return kVersion; }

  const PlanEntry* find(const PlanKey& key, const std::string& signature) const;

  // Any entry for key, preferring the smallest signature.
  const PlanEntry* find_any(const PlanKey& key) const;

  // Replaces an entry with the same key and signature. Throws UsageError for a
  // signature containing a newline or an invalid decomposition.
  void insert(PlanEntry entry);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Entries in key order, then signature order.
  std::vector<PlanEntry> entries() const;

  friend bool operator==(const PlanStore&, const PlanStore&) = default;

 private:
  std::map<std::pair<PlanKey, std::string>, PlanEntry> entries_;
};

// kind|p|L|z|n|threads|splits=a,b|base=k|nanos=t|sig=<rest of line>
std::string format_entry(const PlanEntry& entry);
PlanEntry parse_entry(std::string_view line, std::size_t line_no);

void write_store(std::ostream& out, const PlanStore& store);
// Throws VersionError for another format version, ParseError otherwise.
PlanStore read_store(std::istream& in);

// The file is replaced atomically (temp file + rename).
void store_save(const PlanStore& store, const std::filesystem::path& path);
PlanStore store_load(const std::filesystem::path& path);

}  // namespace modconv

#endif  // MODCONV_PLAN_STORE_HPP_
