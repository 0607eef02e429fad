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

#include "modconv/modfield.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>
#include <utility>
#include <string>

namespace modconv {
namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Brent's variant of Pollard rho; n must be composite and odd.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod64(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n == 0) throw UsageError("distinct_prime_factors: n must be positive");
  for (std::uint64_t q = 2; q < 1000 && q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FourierPrime::FourierPrime(std::uint64_t p) : p_(p) {
  if (p >= kModulusLimit || p < 3 || (p & 1) == 0 || !is_prime(p)) {
    throw DomainError("modulus " + std::to_string(p) +
                      " is not an odd prime below 2^62");
  }
  two_adicity_ = std::countr_zero(p - 1);
  shift_ = std::bit_width(p);
  mu_ = (static_cast<u128>(1) << (2 * shift_)) / p;

  const auto factors = distinct_prime_factors(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool primitive = std::all_of(factors.begin(), factors.end(), [&](auto q) {
      return powmod64(g, (p - 1) / q, p) != 1;
    });
    if (primitive) {
      generator_ = g;
      break;
    }
  }
}

std::uint64_t FourierPrime::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FourierPrime::inv(std::uint64_t a) const {
  if (a == 0) throw DomainError("inverse of zero");
  // Extended Euclid; all magnitudes stay below p < 2^62.
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<std::uint64_t>(t);
}

namespace {

void require_same_field(const Felt& a, const Felt& b) {
  if (!(a.field() == b.field())) {
    throw UsageError("mismatched moduli " + std::to_string(a.field().modulus()) +
                     " and " + std::to_string(b.field().modulus()));
  }
}

}  // namespace

Felt add(const Felt& a, const Felt& b) {
  require_same_field(a, b);
  return Felt(a.field(), a.field().add(a.value(), b.value()));
}

Felt sub(const Felt& a, const Felt& b) {
  require_same_field(a, b);
  return Felt(a.field(), a.field().sub(a.value(), b.value()));
}

Felt neg(const Felt& a) { return Felt(a.field(), a.field().neg(a.value())); }

Felt mul(const Felt& a, const Felt& b) {
  require_same_field(a, b);
  return Felt(a.field(), a.field().mul(a.value(), b.value()));
}

Felt pow(const Felt& a, std::uint64_t e) {
  return Felt(a.field(), a.field().pow(a.value(), e));
}

Felt inv(const Felt& a) { return Felt(a.field(), a.field().inv(a.value())); }

Felt root_of_unity(const FourierPrime& field, std::uint64_t n) {
  if (!field.supports_size(n)) {
    throw UnsupportedSizeError(
        "size " + std::to_string(n) + " needs a power of two dividing p-1; p=" +
        std::to_string(field.modulus()) + " has 2-adicity " +
        std::to_string(field.two_adicity()));
  }
  return Felt(field, field.pow(field.generator(), (field.modulus() - 1) / n));
}

FourierPrime find_fourier_prime(int min_two_adicity, int bits) {
  if (bits < 3 || bits > 62 || min_two_adicity < 1 ||
      min_two_adicity > bits - 2) {
    throw UsageError("find_fourier_prime: need 1 <= k <= bits-2 and bits <= 62");
  }
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  const std::uint64_t hi = std::uint64_t{1} << bits;
  const std::uint64_t step = std::uint64_t{1} << min_two_adicity;
  for (std::uint64_t p = lo + 1; p < hi; p += step) {
    if (is_prime(p)) return FourierPrime(p);
  }
  throw UnsupportedSizeError("no prime = 1 mod 2^" +
                             std::to_string(min_two_adicity) + " with " +
                             std::to_string(bits) + " bits");
}

}  // namespace modconv
