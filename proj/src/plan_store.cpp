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

#include "modconv/plan_store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "modconv/errors.hpp"

#ifndef MODCONV_BUILD_ID
#define MODCONV_BUILD_ID "modconv-dev"
#endif

namespace modconv {
namespace {

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos) break;
      auto value = line.substr(colon + 1);
      value.erase(0, value.find_first_not_of(" \t"));
      std::replace(value.begin(), value.end(), ';', ',');
      return value;
    }
  }
  return "unknown";
}

std::uint64_t parse_u64(std::string_view field, std::string_view what,
                        std::size_t line_no) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(line_no, "bad " + std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

std::string_view strip_prefix(std::string_view field, std::string_view prefix,
                              std::size_t line_no) {
  if (field.substr(0, prefix.size()) != prefix) {
    throw ParseError(line_no, "expected '" + std::string(prefix) + "'");
  }
  return field.substr(prefix.size());
}

}  // namespace

std::string_view to_string(PlanKind kind) {
  switch (kind) {
    case PlanKind::kDft: return "dft";
    case PlanKind::kTft: return "tft";
    case PlanKind::kItft: return "itft";
    case PlanKind::kConv: return "conv";
  }
  return "?";
}

std::optional<PlanKind> parse_plan_kind(std::string_view text) {
  for (PlanKind k : {PlanKind::kDft, PlanKind::kTft, PlanKind::kItft, PlanKind::kConv}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

PlanKey PlanKey::canonical(PlanKind kind, std::uint64_t p, std::uint64_t size,
                           unsigned threads) {
  const bool truncated = kind == PlanKind::kTft || kind == PlanKind::kItft;
  return PlanKey{kind, p, size, truncated ? size : 0, size, threads};
}

Decomposition mirrored(const Decomposition& d) {
  Decomposition m = d;
  std::reverse(m.splits.begin(), m.splits.end());
  return m;
}

std::string exec_signature(unsigned threads) {
  static const std::string model = cpu_model();
  std::ostringstream s;
  s << "cpu=" << model << ";cores=" << std::max(1u, std::thread::hardware_concurrency())
    << ";threads=" << threads << ";build=" << MODCONV_BUILD_ID;
  return s.str();
}

const PlanEntry* PlanStore::find(const PlanKey& key, const std::string& signature) const {
  auto it = entries_.find({key, signature});
  return it == entries_.end() ? nullptr : &it->second;
}

const PlanEntry* PlanStore::find_any(const PlanKey& key) const {
  auto it = entries_.lower_bound({key, std::string()});
  if (it == entries_.end() || !(it->first.first == key)) return nullptr;
  return &it->second;
}

void PlanStore::insert(PlanEntry entry) {
  if (entry.exec_signature.find_first_of("\r\n") != std::string::npos) {
    throw UsageError("exec signature contains a line break");
  }
  if (entry.key.size < 2 || !std::has_single_bit(entry.key.size)) {
    throw UsageError("plan size must be a power of two >= 2");
  }
  validate_decomposition(entry.decomposition, entry.key.size);
  auto k = std::make_pair(entry.key, entry.exec_signature);
  entries_.insert_or_assign(std::move(k), std::move(entry));
}

std::vector<PlanEntry> PlanStore::entries() const {
  std::vector<PlanEntry> out;
  out.reserve(entries_.size());
  for (const auto& [k, e] : entries_) out.push_back(e);
  return out;
}

std::string format_entry(const PlanEntry& e) {
  std::ostringstream s;
  s << to_string(e.key.kind) << '|' << e.key.p << '|' << e.key.size << '|' << e.key.z
    << '|' << e.key.n << '|' << e.key.threads << "|splits=";
  for (std::size_t i = 0; i < e.decomposition.splits.size(); ++i) {
    if (i) s << ',';
    s << e.decomposition.splits[i];
  }
  s << "|base=" << e.decomposition.base << "|nanos=" << e.measured_nanos
    << "|sig=" << e.exec_signature;
  return s.str();
}

PlanEntry parse_entry(std::string_view line, std::size_t line_no) {
  // The signature is the rest of the line and may itself contain '|'.
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (fields.size() < 9) {
    auto bar = line.find('|', pos);
    if (bar == std::string_view::npos) {
      throw ParseError(line_no, "expected 10 '|'-separated fields");
    }
    fields.push_back(line.substr(pos, bar - pos));
    pos = bar + 1;
  }
  fields.push_back(line.substr(pos));

  PlanEntry e;
  auto kind = parse_plan_kind(fields[0]);
  if (!kind) throw ParseError(line_no, "unknown plan kind '" + std::string(fields[0]) + "'");
  e.key.kind = *kind;
  e.key.p = parse_u64(fields[1], "modulus", line_no);
  e.key.size = parse_u64(fields[2], "size", line_no);
  e.key.z = parse_u64(fields[3], "z", line_no);
  e.key.n = parse_u64(fields[4], "n", line_no);
  const std::uint64_t threads = parse_u64(fields[5], "threads", line_no);
  if (threads == 0 || threads > 4096) throw ParseError(line_no, "bad threads");
  e.key.threads = static_cast<unsigned>(threads);

  std::string_view splits = strip_prefix(fields[6], "splits=", line_no);
  while (!splits.empty()) {
    auto comma = splits.find(',');
    auto tok = splits.substr(0, comma);
    e.decomposition.splits.push_back(
        static_cast<unsigned>(parse_u64(tok, "split", line_no)));
    if (comma == std::string_view::npos) break;
    splits.remove_prefix(comma + 1);
    if (splits.empty()) throw ParseError(line_no, "trailing ',' in splits");
  }
  e.decomposition.base = static_cast<unsigned>(
      parse_u64(strip_prefix(fields[7], "base=", line_no), "base", line_no));
  e.measured_nanos = parse_u64(strip_prefix(fields[8], "nanos=", line_no), "nanos", line_no);
  e.exec_signature = std::string(strip_prefix(fields[9], "sig=", line_no));

  if (e.key.size < 2 || !std::has_single_bit(e.key.size)) {
    throw ParseError(line_no, "size must be a power of two >= 2");
  }
  if (e.key.n > e.key.size || e.key.z > e.key.n) {
    throw ParseError(line_no, "need z <= n <= size");
  }
  try {
    validate_decomposition(e.decomposition, e.key.size);
  } catch (const Error& err) {
    throw ParseError(line_no, err.what());
  }
  return e;
}

void write_store(std::ostream& out, const PlanStore& store) {
  out << PlanStore::kHeader << '\n';
  for (const auto& e : store.entries()) out << format_entry(e) << '\n';
}

PlanStore read_store(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty plan file");
  if (line != PlanStore::kHeader) {
    constexpr std::string_view magic = "modconv-plan v";
    if (line.rfind(magic, 0) == 0) {
      throw VersionError("unsupported plan format '" + line + "', expected '" +
                         std::string(PlanStore::kHeader) + "'");
    }
    throw ParseError(1, "missing 'modconv-plan v1' header");
  }
  PlanStore store;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    PlanEntry e = parse_entry(line, line_no);
    if (store.find(e.key, e.exec_signature)) {
      throw ParseError(line_no, "duplicate entry");
    }
    store.insert(std::move(e));
  }
  return store;
}

void store_save(const PlanStore& store, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    write_store(out, store);
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace " + path.string());
  }
}

PlanStore store_load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return read_store(in);
}

}  // namespace modconv
