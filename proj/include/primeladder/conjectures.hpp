#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "primeladder/error.hpp"
#include "primeladder/numtheory.hpp"
#include "primeladder/range_scan.hpp"

namespace primeladder {

/// n = 2p + q with p prime, q an odd prime and p < 2q.
class LemoineWitness {
 public:
  /// Checks primality by trial division.
  LemoineWitness(std::int64_t n, std::int64_t p, std::int64_t q) : n_(n), p_(p), q_(q) {
    validate(is_prime(p) && is_prime(q));
  }

  /// Checks primality against a sieve covering n.
  LemoineWitness(std::int64_t n, std::int64_t p, std::int64_t q, const PrimeSet& sieve)
      : n_(n), p_(p), q_(q) {
    validate(p >= 2 && q >= 2 && p <= sieve.limit() && q <= sieve.limit() && sieve.contains(p) &&
             sieve.contains(q));
  }

  std::int64_t n() const noexcept { return n_; }
  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }

  friend bool operator==(const LemoineWitness&, const LemoineWitness&) = default;

 private:
  void validate(bool primes_ok) const {
    if (!primes_ok || n_ != 2 * p_ + q_ || q_ % 2 == 0 || !(p_ < 2 * q_)) {
      throw Error(ErrorKind::invalid_argument,
                  "(" + std::to_string(p_) + ", " + std::to_string(q_) +
                      ") is not a strengthened Lemoine witness for " + std::to_string(n_));
    }
  }

  std::int64_t n_, p_, q_;
};

inline std::ostream& operator<<(std::ostream& os, const LemoineWitness& w) {
  return os << w.n() << " = 2*" << w.p() << " + " << w.q();
}

namespace detail {

inline void require_coverage(std::int64_t n, const PrimeSet& sieve) {
  if (n > sieve.limit()) {
    throw Error(ErrorKind::coverage_exceeded,
                std::to_string(n) + " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
}

// Smallest-p search without the witness re-check; the hot loop of range scans.
inline std::optional<std::pair<std::int64_t, std::int64_t>> lemoine_pair(std::int64_t n,
                                                                         const PrimeSet& sieve) {
  // p < 2q with q = n - 2p  <=>  5p < 2n
  for (std::int64_t p = 2; 2 * p + 3 <= n && 5 * p < 2 * n; p = (p == 2 ? 3 : p + 2)) {
    if (sieve.contains(p) && sieve.contains(n - 2 * p)) return std::pair{p, n - 2 * p};
  }
  return std::nullopt;
}

}  // namespace detail

/// The witness with the smallest p, or nullopt (which would refute the
/// strengthened conjecture at n).
inline std::optional<LemoineWitness> find_lemoine(std::int64_t n, const PrimeSet& sieve) {
  if (n < 7 || n % 2 == 0) {
    throw Error(ErrorKind::invalid_argument,
                "strengthened Lemoine needs odd n >= 7, got " + std::to_string(n));
  }
  detail::require_coverage(n, sieve);
  if (const auto pq = detail::lemoine_pair(n, sieve)) return LemoineWitness(n, pq->first, pq->second, sieve);
  return std::nullopt;
}

/// n = p + q with p <= q, smallest p.
inline std::optional<std::pair<std::int64_t, std::int64_t>> find_goldbach(std::int64_t n,
                                                                          const PrimeSet& sieve) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::invalid_argument,
                "Goldbach decomposition needs even n >= 4, got " + std::to_string(n));
  }
  detail::require_coverage(n, sieve);
  for (std::int64_t p = 2; 2 * p <= n; p = (p == 2 ? 3 : p + 2)) {
    if (sieve.contains(p) && sieve.contains(n - p)) return std::pair{p, n - p};
  }
  return std::nullopt;
}

inline constexpr const char* kLemoineId = "strengthened_lemoine";

/// Checks every odd n in [lo, hi] (lo >= 7). Counterexamples are collected,
/// never fail-fast. The report is identical for any worker count and any
/// sequence of interrupted and resumed runs.
inline RangeReport<LemoineWitness> verify_lemoine_range(std::int64_t lo, std::int64_t hi,
                                                        const PrimeSet& sieve,
                                                        const ScanOptions& opts = {}) {
  if (lo < 7 || lo > hi) {
    throw Error(ErrorKind::invalid_argument,
                "Lemoine range needs 7 <= lo <= hi, got [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  detail::require_coverage(hi, sieve);
  const std::int64_t first = lo | 1;
  const Progression odds{first, 2, first > hi ? 0 : (hi - first) / 2 + 1};
  return run_range_scan<LemoineWitness>(
      kLemoineId, lo, hi, "odd n >= 7", odds, opts,
      [&sieve](std::int64_t n) -> std::optional<LemoineWitness> {
        const auto pq = detail::lemoine_pair(n, sieve);
        if (!pq) return std::nullopt;
        return LemoineWitness(n, pq->first, pq->second, sieve);
      });
}

}  // namespace primeladder
