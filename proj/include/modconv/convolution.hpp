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

#ifndef MODCONV_CONVOLUTION_HPP_
#define MODCONV_CONVOLUTION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modconv/modfield.hpp"
#include "modconv/plan_store.hpp"
#include "modconv/polyring.hpp"
#include "modconv/transform.hpp"

namespace modconv {

using Residues = std::vector<std::uint64_t>;
using ResidueSpan = std::span<const std::uint64_t>;

enum class Engine { kDefinition, kFftPad, kTft, kSplit, kAuto };

std::string_view to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view text);

struct ConvRequest {
  explicit ConvRequest(const FourierPrime& f) : field(f) {}

  FourierPrime field;
  Engine engine = Engine::kTft;
  unsigned threads = 1;
  OpCounters* counters = nullptr;
  // Read-only plan snapshot consulted by Engine::kAuto.
  const PlanStore* plans = nullptr;
  // Preferred exec signature for plan lookups; any signature is accepted as
  // a fallback.
  std::string signature;
  // Explicit decompositions for the transform-based engines. A plan larger
  // than the transform is restricted; nullptr selects the default.
  const Decomposition* forward_plan = nullptr;
  const Decomposition* inverse_plan = nullptr;
};

// (u (*) v)_i = sum_k u_k v_{(i-k) mod N}.
Residues circ_conv_def(const FourierPrime& field, ResidueSpan u, ResidueSpan v);

// (u * v)_i = sum_k u_{i-k} v_k, length M + N - 1.
Residues lin_conv_def(const FourierPrime& field, ResidueSpan u, ResidueSpan v);

// Inverse DFT of the pointwise product of the two forward DFTs. N must be a
// power of two dividing p - 1.
Residues circ_conv_fft(ResidueSpan u, ResidueSpan v, const ConvRequest& req);

// Zero-pads to the next power of two L >= M + N - 1, convolves circularly,
// truncates to M + N - 1.
Residues lin_conv_fft_pad(ResidueSpan u, ResidueSpan v, const ConvRequest& req);

// u(x) v(x) mod x^N + 1 by twisting with psi, psi^2 = w_N. Needs 2N | p - 1.
Residues nega_conv(ResidueSpan u, ResidueSpan v, const ConvRequest& req);

// Residues of u mod x^n - 1 and mod x^n + 1 for u of length 2n.
std::pair<Residues, Residues> split_residues(const FourierPrime& field,
                                             ResidueSpan u);

// Inverse of split_residues.
Residues recombine_residues(const FourierPrime& field, ResidueSpan cyclic,
                            ResidueSpan negacyclic);

// Circular convolution of length 2n through the x^n - 1 / x^n + 1 split.
Residues circ_conv_split(ResidueSpan u, ResidueSpan v, const ConvRequest& req);

// Linear convolution through two truncated transforms of length
// n = z1 + z2 - 1, n pointwise products and one inverse truncated transform,
// at the smallest power of two L >= n.
Residues conv_tft(ResidueSpan g, ResidueSpan h, const ConvRequest& req);

// Product through req.engine; trailing zeros of the inputs are ignored and
// the result is normalized.
DensePoly poly_mul(const DensePoly& a, const DensePoly& b, const ConvRequest& req);

// Smallest power of two >= n (n >= 1).
std::uint64_t next_pow2(std::uint64_t n);

}  // namespace modconv

#endif  // MODCONV_CONVOLUTION_HPP_
