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

#ifndef MODCONV_TRANSFORM_HPP_
#define MODCONV_TRANSFORM_HPP_

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "modconv/modfield.hpp"

namespace modconv {

enum class Direction { kForward, kInverse };

// Operation counts accumulated by one transform or convolution call.
struct OpCounters {
  std::uint64_t butterflies = 0;
  std::uint64_t pointwise_muls = 0;
};

// Leaf radices a decomposition may use.
inline constexpr std::array<std::uint32_t, 3> kRadixMenu = {2, 4, 8};

// Cooley-Tukey decomposition of a power-of-two size: radix splits applied
// from the root downwards, terminated by a straight-line base case. The
// size is the product of all splits and the base.
struct Decomposition {
  std::vector<std::uint32_t> splits;
  std::uint32_t base = 2;

  std::uint64_t size() const;
  std::string to_string() const;  // e.g. "4x2x8"

  friend auto operator<=>(const Decomposition&, const Decomposition&) = default;
};

// Throws UsageError unless every split is in kRadixMenu, the base is in
// kRadixMenu and the product equals n.
void validate_decomposition(const Decomposition& d, std::uint64_t n);

// Radix-8 passes with one leading radix-2 or radix-4 split when log2(n) is not
// a multiple of 3, terminated by base 8 (or base n for n <= 8). n >= 2.
Decomposition default_decomposition(std::uint64_t n);

// Decomposition for a power-of-two sub-size 2 <= size <= d.size(), obtained by
// dropping leading splits and shrinking the first split that straddles size.
Decomposition restrict_decomposition(const Decomposition& d, std::uint64_t size);

// Powers of a principal root of unity for one power-of-two transform size,
// stored with their Shoup quotients. Immutable once built.
class TwiddleTable {
 public:
  // Throws UnsupportedSizeError when size does not divide p - 1.
  TwiddleTable(const FourierPrime& field, std::uint64_t size);

  const FourierPrime& field() const { return field_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t root() const { return powers_[size_ > 1 ? 1 : 0].value; }
  std::uint64_t inv_size() const { return inv_size_.value; }

  std::uint64_t power(std::uint64_t j) const { return powers_[j].value; }
  std::uint64_t inv_power(std::uint64_t j) const { return inv_powers_[j].value; }
  const ShoupOperand& power_shoup(std::uint64_t j) const { return powers_[j]; }
  const ShoupOperand& inv_power_shoup(std::uint64_t j) const {
    return inv_powers_[j];
  }
  const ShoupOperand& inv_size_shoup() const { return inv_size_; }

 private:
  friend void corrupt_twiddle_for_testing(TwiddleTable& table, std::uint64_t j);

  FourierPrime field_;
  std::uint64_t size_;
  std::vector<ShoupOperand> powers_;
  std::vector<ShoupOperand> inv_powers_;
  ShoupOperand inv_size_;
};

// Shared, process-wide table for (p, size); built on first use.
std::shared_ptr<const TwiddleTable> twiddle_table(const FourierPrime& field,
                                                  std::uint64_t size);

// Replaces power j (and the matching inverse power) with a wrong value.
// Used by the verification harness to prove that a bad table is caught.
void corrupt_twiddle_for_testing(TwiddleTable& table, std::uint64_t j);

struct ExecOptions {
  // nullptr selects default_decomposition(size).
  const Decomposition* decomposition = nullptr;
  // Upper bound on worker threads for this call.
  unsigned threads = 1;
  OpCounters* counters = nullptr;
};

// Modular DFT of length table.size(), natural order in and out. The inverse
// includes the 1/N scaling. Adds exactly (N/2)log2(N) butterflies.
std::vector<std::uint64_t> moddft(std::span<const std::uint64_t> x,
                                  const TwiddleTable& table, Direction dir,
                                  const ExecOptions& options = {});

// One Cooley-Tukey step N = n1 * n2 with radix n1 at the root and the default
// decomposition below it. Output equals moddft.
std::vector<std::uint64_t> moddft_ct_step(std::span<const std::uint64_t> x,
                                          std::uint64_t n1, std::uint64_t n2,
                                          const TwiddleTable& table,
                                          Direction dir,
                                          const ExecOptions& options = {});

// Straight-line DFT for length 2, 4 or 8 using the root of table (whose size
// must be a multiple of the length). Natural order; the inverse is unscaled.
std::vector<std::uint64_t> dft_basecase(std::span<const std::uint64_t> x,
                                        const TwiddleTable& table,
                                        Direction dir = Direction::kForward);

// O(N^2) evaluation of the transform, with 1/N scaling for the inverse.
std::vector<std::uint64_t> reference_dft(std::span<const std::uint64_t> x,
                                         const TwiddleTable& table,
                                         Direction dir);

// Truncated Fourier transform: the first n entries, in bit-reversed order,
// of the table.size()-point DFT of x zero-extended. Needs
// 1 <= x.size() <= n <= table.size(); butterflies <= n*log2(L)/2 + L.
std::vector<std::uint64_t> tft(const TwiddleTable& table,
                               std::span<const std::uint64_t> x,
                               std::uint64_t n, const ExecOptions& options = {});

// Inverse truncated transform. Given the first n bit-reversed spectral values
// of a vector u whose entries n..L-1 are zero (caller's promise), returns
// (L*u_0, ..., L*u_{n-1}).
std::vector<std::uint64_t> itft(const TwiddleTable& table,
                                std::span<const std::uint64_t> xhat,
                                const ExecOptions& options = {});

// In-place forward transform of a.size() == table.size() values, natural
// order in, bit-reversed order out.
void forward_to_bitrev(std::span<std::uint64_t> a, const TwiddleTable& table,
                       const ExecOptions& options = {});

// In-place inverse of forward_to_bitrev without the 1/N factor: bit-reversed
// order in, N times the natural-order vector out.
void inverse_from_bitrev(std::span<std::uint64_t> a, const TwiddleTable& table,
                         const ExecOptions& options = {});

inline std::uint64_t reverse_bits(std::uint64_t j, int bits) {
  std::uint64_t r = 0;
  for (int b = 0; b < bits; ++b) {
    r = (r << 1) | (j & 1);
    j >>= 1;
  }
  return r;
}

// y[rev(j)] = x[j] with rev the log2(N)-bit reversal. Throws UsageError for a
// length that is not a power of two.
template <typename T>
std::vector<T> bit_reverse_permute(std::span<const T> x) {
  if (!std::has_single_bit(x.size())) {
    throw UsageError("bit_reverse_permute: length " + std::to_string(x.size()) +
                     " is not a power of two");
  }
  const int bits = std::countr_zero(x.size());
  std::vector<T> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[reverse_bits(j, bits)] = x[j];
  return y;
}

template <typename T>
std::vector<T> bit_reverse_permute(const std::vector<T>& x) {
  return bit_reverse_permute(std::span<const T>(x));
}

}  // namespace modconv

#endif  // MODCONV_TRANSFORM_HPP_
