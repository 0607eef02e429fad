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

#ifndef MODCONV_POLYRING_HPP_
#define MODCONV_POLYRING_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "modconv/modfield.hpp"

namespace modconv {

// Dense univariate polynomial over a FourierPrime; coeffs()[i] holds the
// coefficient of x^i. Trailing zeros are allowed; normalize() strips them.
class DensePoly {
 public:
  explicit DensePoly(const FourierPrime& field) : field_(field) {}

  // Coefficients are reduced mod p.
  DensePoly(const FourierPrime& field, std::vector<std::uint64_t> coeffs);

  const FourierPrime& field() const { return field_; }
  std::span<const std::uint64_t> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  bool is_zero() const;

  // Largest i with a nonzero coefficient; nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;

  friend bool operator==(const DensePoly& a, const DensePoly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  FourierPrime field_;
  std::vector<std::uint64_t> coeffs_;
};

// Straight O(len(a) * len(b)) product. The result has len(a)+len(b)-1
// coefficients, or is the (empty) zero polynomial when either input is zero.
DensePoly mul_schoolbook(const DensePoly& a, const DensePoly& b);

inline constexpr std::size_t kDefaultKaratsubaThreshold = 16;

// Same contract as mul_schoolbook. Operands shorter than `threshold`
// (or of length 1) are multiplied by schoolbook.
DensePoly mul_karatsuba(const DensePoly& a, const DensePoly& b,
                        std::size_t threshold = kDefaultKaratsubaThreshold);

// Horner evaluation; x must live in a's field.
Felt eval(const DensePoly& a, const Felt& x);

DensePoly normalize(const DensePoly& a);

// Schoolbook product of raw residue spans into out (size la + lb - 1).
void schoolbook_into(const FourierPrime& field, std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out);

// Text format: modulus line, count line, then the residues separated by
// single spaces. Every line ends with '\n'.
DensePoly read_poly(std::istream& in);
void write_poly(std::ostream& out, const DensePoly& poly);

}  // namespace modconv

#endif  // MODCONV_POLYRING_HPP_
