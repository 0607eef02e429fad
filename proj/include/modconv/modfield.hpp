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

#ifndef MODCONV_MODFIELD_HPP_
#define MODCONV_MODFIELD_HPP_

#include <bit>
#include <cstdint>
#include <vector>

#include "modconv/errors.hpp"

namespace modconv {

using u128 = unsigned __int128;

// Precomputed operand for Shoup multiplication: quotient = floor(value * 2^64 / p).
struct ShoupOperand {
  std::uint64_t value = 0;
  std::uint64_t quotient = 0;
};

// A word-sized odd prime together with the data needed to host power-of-two
// transforms: the 2-adicity of p-1 and the smallest primitive root.
//
// The object doubles as the arithmetic context for raw residues. All raw
// operations expect canonical inputs in [0, p) and return canonical outputs.
class FourierPrime {
 public:
  static constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 62;

  // Throws DomainError unless p is an odd prime below 2^62.
  explicit FourierPrime(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  int two_adicity() const { return two_adicity_; }
  std::uint64_t generator() const { return generator_; }

  // True when n is a power of two dividing p - 1.
  bool supports_size(std::uint64_t n) const {
    return n != 0 && std::has_single_bit(n) &&
           std::countr_zero(n) <= two_adicity_;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce_product(static_cast<u128>(a) * b);
  }

  // a / 2
  std::uint64_t half(std::uint64_t a) const {
    return (a & 1) ? (a >> 1) + (p_ >> 1) + 1 : a >> 1;
  }

  // Any 64-bit integer to its canonical residue.
  std::uint64_t reduce(std::uint64_t x) const { return x % p_; }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

  // Throws DomainError for a == 0.
  std::uint64_t inv(std::uint64_t a) const;

  ShoupOperand shoup(std::uint64_t w) const {
    return {w, static_cast<std::uint64_t>((static_cast<u128>(w) << 64) / p_)};
  }

  std::uint64_t mul_shoup(std::uint64_t a, const ShoupOperand& w) const {
    auto q = static_cast<std::uint64_t>((static_cast<u128>(a) * w.quotient) >> 64);
    std::uint64_t r = a * w.value - q * p_;
    return r >= p_ ? r - p_ : r;
  }

  friend bool operator==(const FourierPrime& a, const FourierPrime& b) {
    return a.p_ == b.p_;
  }

 private:
  // Barrett reduction of x < p^2.
  std::uint64_t reduce_product(u128 x) const {
    u128 q = ((x >> (shift_ - 1)) * mu_) >> (shift_ + 1);
    auto r = static_cast<std::uint64_t>(x - q * p_);
    if (r >= p_) r -= p_;
    if (r >= p_) r -= p_;
    return r;
  }

  std::uint64_t p_;
  int two_adicity_;
  std::uint64_t generator_;
  int shift_;  // bit width of p
  u128 mu_;    // floor(2^(2*shift) / p)
};

// Canonical residue with its field attached. Mixing fields is a UsageError.
class Felt {
 public:
  Felt(const FourierPrime& field, std::uint64_t value)
      : field_(field), value_(field.reduce(value)) {}

  std::uint64_t value() const { return value_; }
  const FourierPrime& field() const { return field_; }

  friend bool operator==(const Felt& a, const Felt& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  FourierPrime field_;
  std::uint64_t value_;
};

Felt add(const Felt& a, const Felt& b);
Felt sub(const Felt& a, const Felt& b);
Felt neg(const Felt& a);
Felt mul(const Felt& a, const Felt& b);
// pow(0, 0) is 1.
Felt pow(const Felt& a, std::uint64_t e);
// Throws DomainError for zero.
Felt inv(const Felt& a);

inline Felt operator+(const Felt& a, const Felt& b) { return add(a, b); }
inline Felt operator-(const Felt& a, const Felt& b) { return sub(a, b); }
inline Felt operator-(const Felt& a) { return neg(a); }
inline Felt operator*(const Felt& a, const Felt& b) { return mul(a, b); }

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Distinct prime factors of n >= 1, ascending.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// generator^((p-1)/n): a principal n-th root of unity. Throws
// UnsupportedSizeError when n is not a power of two dividing p - 1.
Felt root_of_unity(const FourierPrime& field, std::uint64_t n);

// Smallest prime p with 2^(bits-1) < p < 2^bits and p = 1 (mod 2^min_two_adicity).
// Requires 1 <= min_two_adicity <= bits - 2 and bits <= 62; throws UsageError
// otherwise and UnsupportedSizeError when the interval holds no such prime.
FourierPrime find_fourier_prime(int min_two_adicity, int bits);

}  // namespace modconv

#endif  // MODCONV_MODFIELD_HPP_
