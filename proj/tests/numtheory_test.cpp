#include <random>

#include <gtest/gtest.h>

#include "primeladder/numtheory.hpp"
#include "reference.hpp"

using namespace primeladder;

TEST(Sieve, SmallCases) {
  const PrimeSet s = sieve_primes(10);
  EXPECT_EQ(primes_in(2, 10, s), (std::vector<std::int64_t>{2, 3, 5, 7}));
  EXPECT_EQ(s.count(), 4);

  const PrimeSet two = sieve_primes(2);
  EXPECT_TRUE(two.contains(2));
  EXPECT_EQ(primes_in(2, 2, two), (std::vector<std::int64_t>{2}));
}

TEST(Sieve, RejectsTinyLimit) {
  EXPECT_THROW(sieve_primes(1), Error);
  try {
    sieve_primes(0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
}

TEST(Sieve, QueriesBeyondLimitFail) {
  const PrimeSet s = sieve_primes(100);
  EXPECT_FALSE(s.contains(1));
  EXPECT_FALSE(s.contains(0));
  EXPECT_FALSE(s.contains(-7));
  EXPECT_TRUE(s.contains(97));
  try {
    (void)s.contains(101);
    FAIL() << "expected coverage-exceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::coverage_exceeded);
  }
}

TEST(Sieve, AgreesWithTrialDivision) {
  const std::int64_t limit = 20000;
  const PrimeSet s = sieve_primes(limit);
  for (std::int64_t k = -3; k <= limit; ++k) {
    ASSERT_EQ(s.contains(k), reference::trial_division_prime(k)) << k;
  }
}

TEST(Sieve, PrimeCountBelowOneMillion) {
  const std::int64_t limit = 1'000'000;
  const auto oracle = reference::byte_sieve(limit);
  const auto expected = std::count(oracle.begin(), oracle.end(), true);
  ASSERT_EQ(expected, 78498);
  EXPECT_EQ(sieve_primes(limit).count(), 78498);
}

TEST(Sieve, PrimesUpToFiveMillion) {
  const std::int64_t limit = 5'000'000;
  const auto oracle = reference::byte_sieve(limit);
  const auto expected = std::count(oracle.begin(), oracle.end(), true);
  ASSERT_EQ(expected, 348513);
  const auto primes = primes_in(2, limit, sieve_primes(limit));
  EXPECT_EQ(static_cast<std::int64_t>(primes.size()), 348513);
  EXPECT_TRUE(std::is_sorted(primes.begin(), primes.end()));
}

TEST(PrimesIn, Ranges) {
  const PrimeSet s = sieve_primes(50);
  EXPECT_EQ(primes_in(3, 11, s), (std::vector<std::int64_t>{3, 5, 7, 11}));
  EXPECT_TRUE(primes_in(8, 10, s).empty());
  EXPECT_EQ(primes_in(47, 50, s), (std::vector<std::int64_t>{47}));
  try {
    (void)primes_in(2, 51, s);
    FAIL() << "expected coverage-exceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::coverage_exceeded);
  }
  EXPECT_THROW((void)primes_in(1, 10, s), Error);
  EXPECT_THROW((void)primes_in(10, 9, s), Error);
}

TEST(PrimesIn, EnumeratesExactlyTheMembers) {
  const PrimeSet s = sieve_primes(3000);
  const auto primes = primes_in(2, 3000, s);
  std::size_t i = 0;
  for (std::int64_t k = 2; k <= 3000; ++k) {
    if (s.contains(k)) {
      ASSERT_LT(i, primes.size());
      ASSERT_EQ(primes[i++], k);
    }
  }
  EXPECT_EQ(i, primes.size());
}

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd(17, 102), 17);
  EXPECT_EQ(gcd(23, 108), 1);
  EXPECT_EQ(gcd(0, 0), 0);
  EXPECT_EQ(gcd(0, 9), 9);
  for (std::int64_t n = 0; n < 50; ++n) EXPECT_EQ(gcd(n, 1), 1);
}

TEST(Gcd, Properties) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::int64_t> dist(0, 1'000'000);
  std::uniform_int_distribution<std::int64_t> scale(1, 1000);
  for (int i = 0; i < 5000; ++i) {
    const std::int64_t a = dist(rng);
    const std::int64_t b = dist(rng);
    const std::int64_t k = scale(rng);
    const std::int64_t g = gcd(a, b);
    ASSERT_EQ(g, gcd(b, a));
    ASSERT_EQ(g, std::gcd(a, b));
    if (g != 0) {
      ASSERT_EQ(a % g, 0);
      ASSERT_EQ(b % g, 0);
    }
    ASSERT_EQ(gcd(k * a, k * b), k * g);
  }
}

TEST(IsPrime, MatchesSieve) {
  const PrimeSet s = sieve_primes(10000);
  for (std::int64_t k = 0; k <= 10000; ++k) ASSERT_EQ(is_prime(k), s.contains(k)) << k;
}
