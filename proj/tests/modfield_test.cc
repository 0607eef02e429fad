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

#include <gtest/gtest.h>

#include <random>

#include "modconv/errors.hpp"
#include "oracles.hpp"

namespace modconv {
namespace {

TEST(FourierPrimeTest, RejectsBadModuli) {
  EXPECT_THROW(FourierPrime(2), DomainError);
  EXPECT_THROW(FourierPrime(15), DomainError);
  EXPECT_THROW(FourierPrime(0), DomainError);
  EXPECT_THROW(FourierPrime((std::uint64_t{1} << 62) + 135), DomainError);
}

TEST(FourierPrimeTest, KnownPrimes) {
  const FourierPrime big(998244353);
  EXPECT_EQ(big.two_adicity(), 23);
  EXPECT_EQ(big.generator(), 3u);
  const FourierPrime small(257);
  EXPECT_EQ(small.two_adicity(), 8);
  EXPECT_EQ(oracle::order(small.generator(), 257), 256u);
  EXPECT_TRUE(small.supports_size(256));
  EXPECT_FALSE(small.supports_size(512));
  EXPECT_FALSE(small.supports_size(12));
}

TEST(FourierPrimeTest, SmallFieldExamples) {
  const FourierPrime f(17);
  EXPECT_EQ(f.add(9, 12), 4u);
  EXPECT_EQ(f.mul(5, 7), 1u);
  EXPECT_EQ(f.inv(5), 7u);
  EXPECT_EQ(f.pow(3, 16), 1u);
  EXPECT_EQ(f.pow(2, 4), 16u);
  EXPECT_EQ(f.pow(0, 0), 1u);
  for (std::uint64_t x = 0; x < 17; ++x) {
    EXPECT_EQ(f.add(x, 0), x);
    EXPECT_EQ(f.add(x, f.neg(x)), 0u);
    EXPECT_EQ(f.mul(x, 1), x);
    EXPECT_EQ(f.add(f.half(x), f.half(x)), x);
  }
  EXPECT_THROW(f.inv(0), DomainError);
}

TEST(FourierPrimeTest, LargeProduct) {
  const FourierPrime f(998244353);
  const std::uint64_t a = f.reduce(std::uint64_t{1} << 30);
  EXPECT_EQ(f.mul(a, a), oracle::powmod_fast(2, 60, 998244353));
}

TEST(FourierPrimeTest, MatchesWideIntegerArithmetic) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {3ULL, 17ULL, 257ULL, 998244353ULL, 4611686018326724609ULL}) {
    const FourierPrime f(p);
    std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t a = d(rng), b = d(rng);
      ASSERT_EQ(f.add(a, b), oracle::addmod(a, b, p));
      ASSERT_EQ(f.sub(a, b), oracle::submod(a, b, p));
      ASSERT_EQ(f.mul(a, b), oracle::mulmod(a, b, p));
      ASSERT_EQ(f.mul_shoup(a, f.shoup(b)), oracle::mulmod(a, b, p));
      ASSERT_EQ(f.pow(a, b), oracle::powmod_fast(a, b, p));
      if (a != 0) ASSERT_EQ(oracle::mulmod(a, f.inv(a), p), 1u);
      ASSERT_EQ(f.reduce(a * 7 + 3), ((a * 7 + 3) % p));
    }
    EXPECT_EQ(f.inv(1), 1u);
    EXPECT_EQ(f.inv(p - 1), p - 1);
  }
}

TEST(FeltTest, OperatorsAndMixedModuli) {
  const FourierPrime f(17), g(257);
  const Felt a(f, 9), b(f, 12);
  EXPECT_EQ((a + b).value(), 4u);
  EXPECT_EQ((a - b).value(), 14u);
  EXPECT_EQ((-a).value(), 8u);
  EXPECT_EQ((a * b).value(), 108u % 17);
  EXPECT_EQ(inv(Felt(f, 5)).value(), 7u);
  EXPECT_EQ(pow(Felt(f, 0), 0).value(), 1u);
  EXPECT_EQ(Felt(f, 40).value(), 6u);
  EXPECT_THROW(a + Felt(g, 1), UsageError);
  EXPECT_THROW(a * Felt(g, 1), UsageError);
  EXPECT_THROW(inv(Felt(f, 0)), DomainError);
}

TEST(PrimalityTest, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime(n), oracle::is_prime_trial(n)) << n;
  }
  EXPECT_TRUE(is_prime(998244353));
  EXPECT_TRUE(is_prime(4611686018326724609ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
  EXPECT_FALSE(is_prime(std::uint64_t{998244353} * 998244353));
}

TEST(PrimalityTest, DistinctFactors) {
  EXPECT_EQ(distinct_prime_factors(998244352), (std::vector<std::uint64_t>{2, 7, 17}));
  EXPECT_EQ(distinct_prime_factors(1), std::vector<std::uint64_t>{});
  EXPECT_EQ(distinct_prime_factors(256), std::vector<std::uint64_t>{2});
  const std::uint64_t semi = 4294967291ULL * 4294967279ULL;
  EXPECT_EQ(distinct_prime_factors(semi),
            (std::vector<std::uint64_t>{4294967279ULL, 4294967291ULL}));
}

TEST(RootOfUnityTest, SmallPrimeExhaustive) {
  const FourierPrime f(17);
  // Every residue of exact order 4 mod 17.
  std::vector<std::uint64_t> order4;
  for (std::uint64_t x = 1; x < 17; ++x) {
    if (oracle::order(x, 17) == 4) order4.push_back(x);
  }
  EXPECT_EQ(order4, (std::vector<std::uint64_t>{4, 13}));
  const std::uint64_t w = root_of_unity(f, 4).value();
  EXPECT_NE(std::find(order4.begin(), order4.end(), w), order4.end());
  EXPECT_EQ(w, 13u);
  EXPECT_EQ(root_of_unity(f, 1).value(), 1u);
  for (std::uint64_t n = 1; n <= 16; n *= 2) {
    EXPECT_EQ(oracle::order(root_of_unity(f, n).value(), 17), n);
  }
  EXPECT_THROW(root_of_unity(f, 32), UnsupportedSizeError);
  EXPECT_THROW(root_of_unity(f, 3), UnsupportedSizeError);
}

TEST(RootOfUnityTest, NestedPowers) {
  const FourierPrime f(257);
  const std::uint64_t w = root_of_unity(f, 256).value();
  EXPECT_EQ(oracle::powmod(w, 128, 257), 256u);
  EXPECT_EQ(oracle::order(w, 257), 256u);
  const FourierPrime big(998244353);
  for (std::uint64_t n = 2; n <= (1u << 23); n *= 2) {
    const std::uint64_t r = root_of_unity(big, n).value();
    ASSERT_EQ(oracle::mulmod(r, r, 998244353), root_of_unity(big, n / 2).value());
    ASSERT_EQ(oracle::powmod_fast(r, n / 2, 998244353), 998244352u);
  }
}

TEST(FindFourierPrimeTest, SmallestInRange) {
  for (auto [k, bits] : {std::pair{1, 10}, {4, 12}, {8, 20}, {10, 30}, {20, 31}}) {
    const FourierPrime f = find_fourier_prime(k, bits);
    const std::uint64_t p = f.modulus();
    EXPECT_GT(p, std::uint64_t{1} << (bits - 1));
    EXPECT_LT(p, std::uint64_t{1} << bits);
    EXPECT_EQ((p - 1) % (std::uint64_t{1} << k), 0u);
    EXPECT_TRUE(oracle::is_prime_trial(p));
    const std::uint64_t step = std::uint64_t{1} << k;
    for (std::uint64_t q = (std::uint64_t{1} << (bits - 1)) + 1; q < p; q += step) {
      EXPECT_FALSE(oracle::is_prime_trial(q)) << q;
    }
  }
  EXPECT_THROW(find_fourier_prime(0, 20), UsageError);
  EXPECT_THROW(find_fourier_prime(5, 63), UsageError);
}

}  // namespace
}  // namespace modconv
