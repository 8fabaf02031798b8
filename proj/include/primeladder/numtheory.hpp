#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "primeladder/error.hpp"

namespace primeladder {

/// Immutable set of the primes in [2, limit], one bit per odd number.
/// Safe for concurrent reads once constructed.
class PrimeSet {
 public:
  explicit PrimeSet(std::int64_t limit) : limit_(limit) {
    if (limit < 2) {
      throw Error(ErrorKind::invalid_argument,
                  "sieve limit must be at least 2, got " + std::to_string(limit));
    }
    // Bit i stands for the odd number 2i + 1; a set bit marks a composite.
    const std::uint64_t odd_count = static_cast<std::uint64_t>(limit - 1) / 2 + 1;
    composite_.assign((odd_count + 63) / 64, 0);
    set_composite(0);  // 1 is not prime
    for (std::int64_t p = 3; p * p <= limit; p += 2) {
      if (is_composite_bit(p / 2)) continue;
      for (std::int64_t m = p * p; m <= limit; m += 2 * p) set_composite(m / 2);
    }
  }

  std::int64_t limit() const noexcept { return limit_; }

  /// Throws coverage-exceeded for k > limit().
  bool contains(std::int64_t k) const {
    if (k > limit_) {
      throw Error(ErrorKind::coverage_exceeded,
                  std::to_string(k) + " exceeds sieve limit " + std::to_string(limit_));
    }
    if (k < 2) return false;
    if (k == 2) return true;
    if (k % 2 == 0) return false;
    return !is_composite_bit(k / 2);
  }

  /// Number of primes in [2, limit()].
  std::int64_t count() const {
    std::int64_t total = limit_ >= 2 ? 1 : 0;
    for (std::int64_t k = 3; k <= limit_; k += 2) total += is_composite_bit(k / 2) ? 0 : 1;
    return total;
  }

 private:
  bool is_composite_bit(std::int64_t i) const noexcept {
    return (composite_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U;
  }
  void set_composite(std::int64_t i) noexcept {
    composite_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
  }

  std::int64_t limit_;
  std::vector<std::uint64_t> composite_;
};

inline PrimeSet sieve_primes(std::int64_t limit) { return PrimeSet(limit); }

/// gcd(0, 0) == 0.
constexpr std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept {
  while (b != 0) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a < 0 ? -a : a;
}

/// Ascending primes in [lo, hi].
inline std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi, const PrimeSet& sieve) {
  if (lo < 2 || lo > hi) {
    throw Error(ErrorKind::invalid_argument,
                "primes_in requires 2 <= lo <= hi, got [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  if (hi > sieve.limit()) {
    throw Error(ErrorKind::coverage_exceeded,
                std::to_string(hi) + " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
  std::vector<std::int64_t> out;
  if (lo <= 2) out.push_back(2);
  for (std::int64_t k = std::max<std::int64_t>(3, lo | 1); k <= hi; k += 2) {
    if (sieve.contains(k)) out.push_back(k);
  }
  return out;
}

/// Trial-division primality for callers that hold no sieve (small inputs).
constexpr bool is_prime(std::int64_t k) noexcept {
  if (k < 2) return false;
  if (k % 2 == 0) return k == 2;
  for (std::int64_t d = 3; d * d <= k; d += 2) {
    if (k % d == 0) return false;
  }
  return true;
}

}  // namespace primeladder
