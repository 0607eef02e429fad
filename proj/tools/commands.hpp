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

#ifndef MODCONV_TOOLS_COMMANDS_HPP_
#define MODCONV_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modconv/convolution.hpp"
#include "modconv/planner.hpp"
#include "modconv/verify.hpp"

namespace modconv::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kModulusMismatch = 3,
  kUnsupportedSize = 4,
  kIo = 5,
};

struct MulArgs {
  std::filesystem::path a;
  std::filesystem::path b;
  std::optional<std::filesystem::path> out;  // stdout when empty
  Engine engine = Engine::kTft;
  unsigned threads = 1;
  std::optional<std::filesystem::path> store;
};

struct PlanArgs {
  std::filesystem::path store;
  std::uint64_t max_l = 1024;
  unsigned threads = 1;
  std::uint64_t prime = 998244353;
};

struct SweepConfig {
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 1;
  std::uint64_t step = 1;
  std::vector<Engine> engines = {Engine::kFftPad, Engine::kTft};
  std::optional<std::uint64_t> prime;
  std::optional<int> prime_bits;
  unsigned threads = 1;
  int reps = 1000;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> store;
};

inline constexpr std::string_view kCsvHeader =
    "n,engine,threads,nanos_median,nanos_mean,butterflies,pointwise_muls";

struct SweepRow {
  std::uint64_t n = 0;
  Engine engine = Engine::kTft;
  unsigned threads = 1;
  bool feasible = true;
  std::uint64_t nanos_median = 0;
  std::uint64_t nanos_mean = 0;
  OpCounters counters;
};

int cmd_verify(const VerifyOptions& options, std::ostream& out);
int cmd_mul(const MulArgs& args, std::ostream& out, std::ostream& err);
// The planner is a parameter so tests can observe its search counter.
int cmd_plan(const PlanArgs& args, Planner& planner, std::ostream& out, std::ostream& err);

// Rows of the sweep; infeasible sizes come back with feasible = false.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
int cmd_sweep(const SweepConfig& cfg, const std::optional<std::filesystem::path>& csv,
              std::ostream& out, std::ostream& err);

// Full command line: parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modconv::cli

#endif  // MODCONV_TOOLS_COMMANDS_HPP_
