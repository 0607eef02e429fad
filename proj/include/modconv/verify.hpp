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

#ifndef MODCONV_VERIFY_HPP_
#define MODCONV_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace modconv {

struct VerifyOptions {
  std::uint64_t seed = 1;
  // Largest transform length any suite exercises.
  std::uint64_t cap = 256;
  // Flip one twiddle factor in the tables used by the transform suite.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  std::string first_failure;
};

// Runs the cross-engine oracle suites. Output depends only on the options.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

// One line per suite: "<name> PASS <checks> checks" or "<name> FAIL <why>".
std::string format_report(const std::vector<SuiteResult>& results);

}  // namespace modconv

#endif  // MODCONV_VERIFY_HPP_
