#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "primeladder/error.hpp"
#include "primeladder/numtheory.hpp"
#include "primeladder/range_scan.hpp"

namespace primeladder {

/// A nonempty sequence of odd primes p_1, ..., p_m and its sum n. Order
/// matters; canonicity is a separate predicate.
class Partition {
 public:
  explicit Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw Error(ErrorKind::invalid_argument, "partition needs at least one part");
    for (const std::int64_t p : parts_) {
      if (p % 2 == 0 || !is_prime(p)) {
        throw Error(ErrorKind::invalid_argument, std::to_string(p) + " is not an odd prime");
      }
    }
    n_ = std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0});
  }

  std::int64_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return parts_.size(); }
  const std::vector<std::int64_t>& parts() const noexcept { return parts_; }
  /// 1-based, matching p_1 .. p_m.
  std::int64_t operator[](std::size_t i) const { return parts_.at(i - 1); }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<std::int64_t> parts_;
  std::int64_t n_ = 0;
};

inline std::string to_string(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p.parts()[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << to_string(p); }

/// True iff every part is an odd prime and p_j >= 2(p_1 + ... + p_{j-1}) + 3
/// for every j > 1. Never throws; arbitrary input is fine.
inline bool is_canonical(std::span<const std::int64_t> parts) {
  if (parts.empty()) return false;
  std::int64_t prefix = 0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const std::int64_t p = parts[j];
    if (p < 3 || p % 2 == 0 || !is_prime(p)) return false;
    if (j > 0 && p < 2 * prefix + 3) return false;
    prefix += p;
  }
  return true;
}

inline bool is_canonical(const Partition& p) { return is_canonical(p.parts()); }

/// The two labels that end up adjacent at the k-th partition boundary.
struct SigmaTau {
  std::size_t k = 0;
  std::int64_t sigma = 0;  // 2(p_1 + ... + p_{k-2}) + p_{k-1}
  std::int64_t tau = 0;    // 2(p_1 + ... + p_{k-1}) + p_k + 1

  friend bool operator==(const SigmaTau&, const SigmaTau&) = default;
};

inline SigmaTau sigma_tau(const Partition& p, std::size_t k) {
  if (k < 3 || k > p.size()) {
    throw Error(ErrorKind::invalid_argument,
                "k = " + std::to_string(k) + " outside 3.." + std::to_string(p.size()));
  }
  std::int64_t before_km1 = 0;  // p_1 + ... + p_{k-2}
  for (std::size_t i = 1; i <= k - 2; ++i) before_km1 += p[i];
  return {k, 2 * before_km1 + p[k - 1], 2 * (before_km1 + p[k - 1]) + p[k] + 1};
}

/// Canonical and gcd(sigma_k, tau_k) = 1 for every 3 <= k <= m. Partitions
/// with at most two parts are strong vacuously.
inline bool is_strong(const Partition& p) {
  if (!is_canonical(p)) {
    throw Error(ErrorKind::invalid_argument, "partition " + to_string(p) + " is not canonical");
  }
  for (std::size_t k = 3; k <= p.size(); ++k) {
    const SigmaTau st = sigma_tau(p, k);
    if (gcd(st.sigma, st.tau) != 1) return false;
  }
  return true;
}

struct PartitionQuery {
  int max_terms = 3;  // 1..4
  bool require_strong = false;
  /// Only partitions with exactly max_terms parts.
  bool exact_terms = false;
};

namespace detail {

inline void check_partition_args(std::int64_t n, int max_terms, const PrimeSet& sieve) {
  if (n < 3) throw Error(ErrorKind::invalid_argument, "n must be >= 3, got " + std::to_string(n));
  if (max_terms < 1 || max_terms > 4) {
    throw Error(ErrorKind::invalid_argument,
                "max_terms must be in 1..4, got " + std::to_string(max_terms));
  }
  if (n > sieve.limit()) {
    throw Error(ErrorKind::coverage_exceeded,
                std::to_string(n) + " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
}

// Visits the canonical partitions of n with exactly m parts in
// lexicographic order until `visit` returns false. Returns false if stopped.
inline bool visit_canonical(std::int64_t n, int m, const PrimeSet& sieve,
                            const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> parts;
  parts.reserve(static_cast<std::size_t>(m));
  const std::function<bool(std::int64_t)> extend = [&](std::int64_t prefix) -> bool {
    const std::int64_t rest = n - prefix;
    const std::int64_t floor = parts.empty() ? 3 : 2 * prefix + 3;
    if (static_cast<int>(parts.size()) == m - 1) {
      if (rest < floor || rest % 2 == 0 || !sieve.contains(rest)) return true;
      parts.push_back(rest);
      const bool go_on = visit(parts);
      parts.pop_back();
      return go_on;
    }
    // The next part after p must be at least 2(prefix + p) + 3.
    for (std::int64_t p = floor | 1; 3 * (prefix + p) + 3 <= n; p += 2) {
      if (!sieve.contains(p)) continue;
      parts.push_back(p);
      const bool go_on = extend(prefix + p);
      parts.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return extend(0);
}

}  // namespace detail

/// First match in order of ascending part count, then lexicographic parts.
inline std::optional<Partition> find_canonical(std::int64_t n, const PartitionQuery& query,
                                               const PrimeSet& sieve) {
  detail::check_partition_args(n, query.max_terms, sieve);
  std::optional<Partition> found;
  for (int m = query.exact_terms ? query.max_terms : 1; m <= query.max_terms && !found; ++m) {
    detail::visit_canonical(n, m, sieve, [&](const std::vector<std::int64_t>& parts) {
      Partition candidate(parts);
      if (query.require_strong && !is_strong(candidate)) return true;
      found = std::move(candidate);
      return false;
    });
  }
  return found;
}

inline std::optional<Partition> find_canonical(std::int64_t n, int max_terms, bool require_strong,
                                               const PrimeSet& sieve) {
  return find_canonical(n, PartitionQuery{max_terms, require_strong, false}, sieve);
}

/// Every canonical partition of n with at most max_terms parts, in
/// lexicographic order of the part sequences.
inline std::vector<Partition> enumerate_canonical(std::int64_t n, int max_terms,
                                                  const PrimeSet& sieve) {
  detail::check_partition_args(n, max_terms, sieve);
  std::vector<Partition> out;
  for (int m = 1; m <= max_terms; ++m) {
    detail::visit_canonical(n, m, sieve, [&](const std::vector<std::int64_t>& parts) {
      out.emplace_back(parts);
      return true;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class Parity { all, odd, even };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::all: return "all";
    case Parity::odd: return "odd";
    case Parity::even: return "even";
  }
  return "?";
}

/// Looks for a partition matching `query` for every n in [lo, hi] of the
/// requested parity; lo >= 50.
inline RangeReport<Partition> verify_strong_range(std::int64_t lo, std::int64_t hi,
                                                  const PartitionQuery& query, Parity parity,
                                                  const PrimeSet& sieve,
                                                  const ScanOptions& opts = {}) {
  if (lo < 50 || lo > hi) {
    throw Error(ErrorKind::invalid_argument,
                "partition range needs 50 <= lo <= hi, got [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  detail::check_partition_args(hi, query.max_terms, sieve);
  Progression values{lo, 1, hi - lo + 1};
  if (parity != Parity::all) {
    const std::int64_t want = parity == Parity::odd ? 1 : 0;
    const std::int64_t first = (lo % 2 == want) ? lo : lo + 1;
    values = {first, 2, first > hi ? 0 : (hi - first) / 2 + 1};
  }
  const std::string id = query.require_strong ? "strong_canonical_partition" : "canonical_partition";
  const std::string eligible = std::string(to_string(parity)) + " n, " +
                               (query.exact_terms ? "exactly " : "at most ") +
                               std::to_string(query.max_terms) + " terms";
  return run_range_scan<Partition>(id, lo, hi, eligible, values, opts,
                                   [&](std::int64_t n) { return find_canonical(n, query, sieve); });
}

}  // namespace primeladder
