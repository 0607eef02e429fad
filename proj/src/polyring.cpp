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

#include "modconv/polyring.hpp"

#include <algorithm>

namespace modconv {
namespace {

void require_same_field(const DensePoly& a, const DensePoly& b) {
  if (!(a.field() == b.field())) {
    throw UsageError("polynomials over different moduli " +
                     std::to_string(a.field().modulus()) + " and " +
                     std::to_string(b.field().modulus()));
  }
}

using Span = std::span<const std::uint64_t>;

// out must hold a.size() + b.size() - 1 entries and is overwritten.
void karatsuba_into(const FourierPrime& f, Span a, Span b,
                    std::span<std::uint64_t> out, std::size_t threshold) {
  const std::size_t la = a.size(), lb = b.size();
  if (std::min(la, lb) < threshold || std::min(la, lb) == 1) {
    schoolbook_into(f, a, b, out);
    return;
  }
  const std::size_t m = (std::max(la, lb) + 1) / 2;
  Span a0 = a.first(std::min(m, la)), a1 = la > m ? a.subspan(m) : Span{};
  Span b0 = b.first(std::min(m, lb)), b1 = lb > m ? b.subspan(m) : Span{};

  std::fill(out.begin(), out.end(), 0);
  std::vector<std::uint64_t> z0(a0.size() + b0.size() - 1);
  karatsuba_into(f, a0, b0, z0, threshold);

  std::vector<std::uint64_t> z2;
  if (!a1.empty() && !b1.empty()) {
    z2.resize(a1.size() + b1.size() - 1);
    karatsuba_into(f, a1, b1, z2, threshold);
  }

  auto sum_halves = [&](Span lo, Span hi) {
    std::vector<std::uint64_t> s(lo.begin(), lo.end());
    for (std::size_t i = 0; i < hi.size(); ++i) s[i] = f.add(s[i], hi[i]);
    return s;
  };
  const auto sa = sum_halves(a0, a1);
  const auto sb = sum_halves(b0, b1);
  std::vector<std::uint64_t> z1(sa.size() + sb.size() - 1);
  karatsuba_into(f, sa, sb, z1, threshold);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = f.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = f.sub(z1[i], z2[i]);

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
  // High entries of z1 beyond the product length cancel to zero.
  for (std::size_t i = 0; i < z1.size() && m + i < out.size(); ++i) {
    out[m + i] = f.add(out[m + i], z1[i]);
  }
  for (std::size_t i = 0; i < z2.size(); ++i) {
    out[2 * m + i] = f.add(out[2 * m + i], z2[i]);
  }
}

}  // namespace

DensePoly::DensePoly(const FourierPrime& field, std::vector<std::uint64_t> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c = field_.reduce(c);
}

bool DensePoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](std::uint64_t c) { return c == 0; });
}

std::optional<std::size_t> DensePoly::degree() const {
  for (std::size_t i = coeffs_.size(); i > 0; --i) {
    if (coeffs_[i - 1] != 0) return i - 1;
  }
  return std::nullopt;
}

void schoolbook_into(const FourierPrime& f, Span a, Span b,
                     std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
  }
}

DensePoly mul_schoolbook(const DensePoly& a, const DensePoly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return DensePoly(a.field());
  std::vector<std::uint64_t> out(a.size() + b.size() - 1);
  schoolbook_into(a.field(), a.coeffs(), b.coeffs(), out);
  return DensePoly(a.field(), std::move(out));
}

DensePoly mul_karatsuba(const DensePoly& a, const DensePoly& b,
                        std::size_t threshold) {
  require_same_field(a, b);
  if (threshold == 0) throw UsageError("karatsuba threshold must be >= 1");
  if (a.is_zero() || b.is_zero()) return DensePoly(a.field());
  std::vector<std::uint64_t> out(a.size() + b.size() - 1);
  karatsuba_into(a.field(), a.coeffs(), b.coeffs(), out, threshold);
  return DensePoly(a.field(), std::move(out));
}

Felt eval(const DensePoly& a, const Felt& x) {
  if (!(a.field() == x.field())) {
    throw UsageError("evaluation point lives in a different field");
  }
  const FourierPrime& f = a.field();
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i > 0; --i) {
    acc = f.add(f.mul(acc, x.value()), a.coeffs()[i - 1]);
  }
  return Felt(f, acc);
}

DensePoly normalize(const DensePoly& a) {
  const auto deg = a.degree();
  if (!deg) return DensePoly(a.field());
  return DensePoly(a.field(), std::vector<std::uint64_t>(
                                  a.coeffs().begin(),
                                  a.coeffs().begin() + *deg + 1));
}

}  // namespace modconv
