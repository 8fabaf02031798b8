#pragma once

#include <algorithm>
#include <chrono>
#include <initializer_list>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primeladder/conjectures.hpp"
#include "primeladder/error.hpp"
#include "primeladder/ladder.hpp"
#include "primeladder/numtheory.hpp"
#include "primeladder/oracle.hpp"

namespace primeladder {

/// Label exchanges that turn a pre-swap labeling into a prime one.
struct SwapPlan {
  std::vector<std::pair<Label, Label>> swaps;
  std::string rule_tag;
  bool repaired_by_search = false;
};

/// The column of the extended labeling whose two labels are both multiples
/// of q: (k+1)q on top and (k+2)q below, k = floor(4p/q).
struct ColumnJStar {
  std::int64_t j_star = 0;  // absolute column in 1..2p+q
  std::int64_t k = 0;
  std::pair<Label, Label> labels;

  /// The even member of the pair; the one the case analysis moves.
  Label even_label() const { return labels.first % 2 == 0 ? labels.first : labels.second; }
};

namespace detail {

inline void require_prime(std::int64_t p, const char* what) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::invalid_argument, std::string(what) + " = " + std::to_string(p) +
                                                 " is not prime");
  }
}

inline Labeling apply(Labeling l, const SwapPlan& plan) {
  for (const auto& [a, b] : plan.swaps) l.swap_in_place(a, b);
  return l;
}

inline void require_prime_labeling(const Labeling& l, const std::string& what) {
  if (!is_prime_labeling(l)) {
    const auto bad = verify_labeling(l);
    throw Error(ErrorKind::construction_failed,
                what + " produced " + std::to_string(bad.size()) + " non-coprime edge(s)");
  }
}

}  // namespace detail

/// Labeling S of L_2p before any repair (p >= 2):
///   row i, column j <= p     : (i-1)p + j
///   row i, column p < j <= 2p: (3-i)p + j
/// Its only bad edges are the vertical ones in columns p and 2p.
inline Labeling lemma_pre_swap(std::int64_t p) {
  if (p < 2) throw Error(ErrorKind::invalid_argument, "p must be at least 2");
  std::vector<Label> top, bottom;
  for (std::int64_t j = 1; j <= 2 * p; ++j) {
    top.push_back(j <= p ? j : 2 * p + j);
    bottom.push_back(p + j);
  }
  return Labeling(std::move(top), std::move(bottom));
}

/// The first two repairs of the general lemma labeling (1 <-> 3p, 4 <-> 2p).
/// The p <-> 3p repair for p = 2 (mod 3) is not applied here.
inline Labeling lemma_two_swaps(std::int64_t p) {
  return swap_labels(swap_labels(lemma_pre_swap(p), 1, 3 * p), 4, 2 * p);
}

/// Prime labeling of L_2p whose last column holds 4p on top and 1 below.
inline Labeling lemma_ladder_2p(std::int64_t p) {
  detail::require_prime(p, "p");
  switch (p) {
    case 2: return Labeling({5, 4, 3, 8}, {6, 7, 2, 1});
    case 3: return Labeling({7, 2, 3, 10, 11, 12}, {6, 5, 4, 9, 8, 1});
    case 5: return Labeling({15, 2, 3, 4, 17, 14, 5, 18, 19, 20}, {16, 7, 8, 9, 10, 11, 12, 13, 6, 1});
    default: break;
  }
  Labeling l = lemma_two_swaps(p);
  // 3p next to p+1 shares the factor 3 exactly when p = 2 (mod 3).
  if (p % 3 == 2) l.swap_in_place(p, 3 * p);
  detail::require_prime_labeling(l, "lemma construction for p = " + std::to_string(p));
  return l;
}

namespace detail {

inline void require_theorem_args(std::int64_t p, std::int64_t q) {
  require_prime(p, "p");
  require_prime(q, "q");
  if (q == 2) throw Error(ErrorKind::invalid_argument, "q must be odd");
  if (!(p < 2 * q)) {
    throw Error(ErrorKind::invalid_argument,
                "need p < 2q, got p = " + std::to_string(p) + ", q = " + std::to_string(q));
  }
}

}  // namespace detail

inline ColumnJStar column_jstar(std::int64_t p, std::int64_t q) {
  detail::require_theorem_args(p, q);
  ColumnJStar c;
  c.k = 4 * p / q;
  c.labels = {(c.k + 1) * q, (c.k + 2) * q};
  c.j_star = c.labels.first - 2 * p;
  return c;
}

/// S_2: the lemma labeling of L_2p followed by q columns holding
/// 2p + (i-1)q + j in row i, column j (2p < j <= 2p+q).
inline Labeling theorem_pre_swap(std::int64_t p, std::int64_t q) {
  detail::require_theorem_args(p, q);
  const Labeling base = lemma_ladder_2p(p);
  std::vector<Label> top = base.row(1);
  std::vector<Label> bottom = base.row(2);
  for (std::int64_t j = 2 * p + 1; j <= 2 * p + q; ++j) {
    top.push_back(2 * p + j);
    bottom.push_back(2 * p + q + j);
  }
  return Labeling(std::move(top), std::move(bottom));
}

namespace detail {

// Every edge touching one of `labels` is coprime.
inline bool locally_coprime(const Labeling& l, std::initializer_list<Label> labels) {
  for (const Label x : labels) {
    const Position p = l.position_of(x);
    for (const Position nb : l.neighbours(p)) {
      if (gcd(x, l.at(nb)) != 1) return false;
    }
  }
  return true;
}

// The swap named by the case analysis for (p, q).
inline SwapPlan case_tree_plan(std::int64_t p, std::int64_t q, const ColumnJStar& js) {
  const Label even = js.even_label();
  const auto plan = [](Label a, Label b, std::string tag) {
    return SwapPlan{{{a, b}}, std::move(tag), false};
  };
  // Multiples of q in column j*: 2q, 4q or 8q in the first range, 6q in the second.
  const bool power_of_two_range = q > p || (2 * q > p && 3 * q < 2 * p);
  if (power_of_two_range) {
    switch (p) {
      case 2:
        if (q == 3) return plan(12, 14, "p=2, q=3: swap 12 and 14");
        return plan(even, 8, "p=2: power of two 8");
      case 3:
        if (q == 5) return plan(even, 8, "p=3, q=5: power of two 8");
        return plan(even, 4, "p=3: power of two 4");
      case 5:
        if (q == 3) return plan(21, 23, "p=5, q=3: swap 7q=21 with 23");
        if (q == 7) return plan(even, 4, "p=5, q=7: power of two 4");
        return plan(even, 8, "p=5: power of two 8");
      default:
        if (q == p + 2) return plan(even, 8, "p>=7, q=p+2: power of two 8");
        return plan(even, 2, "p>=7: power of two 2");
    }
  }
  // 2p/3 < q <= p
  switch (p) {
    case 3: return plan(even, 6, "2p/3<q<=p, p=3: label 6");
    case 5: return plan(even, 6, "2p/3<q<=p, p=5: label 6");
    case 7:
      if (q == 5) return plan(35, 7, "2p/3<q<=p, p=7, q=5: swap 5p=35 with 7");
      return plan(even, 12, "2p/3<q<=p, p=7: label 12");
    default: return plan(even, 6, "2p/3<q<=p, p>=11: label 6");
  }
}

// Ascending scan over the candidate family of the case (powers of two, or
// 2^a 3^b with a, b > 0) for a label whose neighbours avoid multiples of q.
inline std::optional<SwapPlan> candidate_scan_plan(const Labeling& s2, std::int64_t p,
                                                   std::int64_t q, const ColumnJStar& js) {
  const bool power_of_two_range = q > p || (2 * q > p && 3 * q < 2 * p);
  std::vector<Label> candidates;
  if (power_of_two_range) {
    for (Label c = 2; c <= s2.order(); c *= 2) candidates.push_back(c);
  } else {
    for (Label a = 2; a <= s2.order(); a *= 2) {
      for (Label c = a * 3; c <= s2.order(); c *= 3) candidates.push_back(c);
    }
    std::sort(candidates.begin(), candidates.end());
  }
  const Label even = js.even_label();
  for (const Label c : candidates) {
    if (c == even) continue;
    const Labeling trial = swap_labels(s2, even, c);
    if (locally_coprime(trial, {even, c}) && is_prime_labeling(trial)) {
      return SwapPlan{{{even, c}},
                      std::string(power_of_two_range ? "power of two " : "label 2^a3^b ") +
                          std::to_string(c) + " by ascending scan",
                      false};
    }
  }
  return std::nullopt;
}

// Exhaustive repair: one column-j* label swapped with anything, then both
// column-j* labels swapped with anything.
inline std::optional<SwapPlan> search_plan(const Labeling& s2, const ColumnJStar& js) {
  const auto [top, bottom] = js.labels;
  Labeling trial = s2;
  for (const Label x : {top, bottom}) {
    for (Label y = 1; y <= s2.order(); ++y) {
      if (y == top || y == bottom) continue;
      trial.swap_in_place(x, y);
      if (locally_coprime(trial, {x, y}) && is_prime_labeling(trial)) {
        return SwapPlan{{{x, y}}, "search: single swap", true};
      }
      trial.swap_in_place(x, y);
    }
  }
  for (Label y1 = 1; y1 <= s2.order(); ++y1) {
    if (y1 == top || y1 == bottom) continue;
    trial.swap_in_place(top, y1);
    for (Label y2 = 1; y2 <= s2.order(); ++y2) {
      if (y2 == top || y2 == bottom || y2 == y1) continue;
      trial.swap_in_place(bottom, y2);
      if (locally_coprime(trial, {top, bottom, y1, y2}) && is_prime_labeling(trial)) {
        return SwapPlan{{{top, y1}, {bottom, y2}}, "search: double swap", true};
      }
      trial.swap_in_place(bottom, y2);
    }
    trial.swap_in_place(top, y1);
  }
  return std::nullopt;
}

}  // namespace detail

struct TheoremLabeling {
  Labeling labeling;
  SwapPlan plan;
  ColumnJStar column;
};

/// Prime labeling of L_{2p+q} (p prime, q odd prime, p < 2q) together with
/// the repair that produced it.
inline TheoremLabeling theorem_construction(std::int64_t p, std::int64_t q) {
  const ColumnJStar js = column_jstar(p, q);
  const Labeling s2 = theorem_pre_swap(p, q);

  SwapPlan plan = detail::case_tree_plan(p, q, js);
  Labeling result = detail::apply(s2, plan);
  if (!detail::locally_coprime(result, {plan.swaps[0].first, plan.swaps[0].second}) ||
      !is_prime_labeling(result)) {
    auto scanned = detail::candidate_scan_plan(s2, p, q, js);
    if (!scanned) scanned = detail::search_plan(s2, js);
    if (!scanned) {
      throw Error(ErrorKind::construction_failed,
                  "no repair found for p = " + std::to_string(p) + ", q = " + std::to_string(q));
    }
    plan = std::move(*scanned);
    result = detail::apply(s2, plan);
    detail::require_prime_labeling(
        result, "theorem construction for p = " + std::to_string(p) + ", q = " + std::to_string(q));
  }
  return {std::move(result), std::move(plan), js};
}

inline Labeling theorem_ladder_2p_q(std::int64_t p, std::int64_t q) {
  return theorem_construction(p, q).labeling;
}

/// Prime labelings of L_1 .. L_6 found by brute_force_labeling (default
/// configuration) and frozen here.
inline std::optional<Labeling> stored_labeling(std::int64_t n) {
  switch (n) {
    case 1: return Labeling({1}, {2});
    case 2: return Labeling({1, 4}, {2, 3});
    case 3: return Labeling({1, 2, 3}, {6, 5, 4});
    case 4: return Labeling({1, 4, 5, 6}, {2, 3, 8, 7});
    case 5: return Labeling({1, 4, 9, 8, 5}, {2, 3, 10, 7, 6});
    case 6: return Labeling({1, 4, 9, 10, 11, 12}, {2, 3, 8, 7, 6, 5});
    default: return std::nullopt;
  }
}

enum class ConstructionMethod { stored, lemma_2p, theorem_2p_q, oracle_search };

inline const char* to_string(ConstructionMethod m) {
  switch (m) {
    case ConstructionMethod::stored: return "stored";
    case ConstructionMethod::lemma_2p: return "lemma_2p";
    case ConstructionMethod::theorem_2p_q: return "theorem_2p_q";
    case ConstructionMethod::oracle_search: return "oracle_search";
  }
  return "?";
}

struct ConstructOptions {
  /// Even n with n/2 composite are handed to the brute-force search up to
  /// this order.
  std::int64_t oracle_limit = 24;
  std::chrono::milliseconds oracle_budget{10000};
};

struct Construction {
  Labeling labeling;
  ConstructionMethod method = ConstructionMethod::stored;
  std::optional<LemoineWitness> witness;
  std::optional<SwapPlan> plan;
};

/// Verified prime labeling of L_n:
///   n in {1, 3, 5}          stored labeling
///   odd n >= 7              smallest-p Lemoine witness, then theorem_construction
///   even n, n/2 prime       lemma_ladder_2p(n/2)
///   other even n            stored labeling (n <= 6) or the oracle up to oracle_limit
/// `sieve` must cover n when n is odd and at least 7.
inline Construction construct_ladder_detailed(std::int64_t n, const PrimeSet& sieve,
                                              const ConstructOptions& opts = {}) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "n must be >= 1");
  if (n % 2 == 1) {
    if (n < 7) return {*stored_labeling(n), ConstructionMethod::stored, std::nullopt, std::nullopt};
    const auto w = find_lemoine(n, sieve);
    if (!w) {
      throw Error(ErrorKind::witness_not_found,
                  "no strengthened Lemoine witness for n = " + std::to_string(n) +
                      "; this would refute the conjecture");
    }
    auto t = theorem_construction(w->p(), w->q());
    return {std::move(t.labeling), ConstructionMethod::theorem_2p_q, w, std::move(t.plan)};
  }
  if (is_prime(n / 2)) {
    return {lemma_ladder_2p(n / 2), ConstructionMethod::lemma_2p, std::nullopt, std::nullopt};
  }
  if (auto s = stored_labeling(n)) {
    return {std::move(*s), ConstructionMethod::stored, std::nullopt, std::nullopt};
  }
  if (n <= opts.oracle_limit) {
    auto r = brute_force_labeling(SearchConfig{n, opts.oracle_budget, FillOrder::column_major, true});
    if (r.status == SearchStatus::found) {
      detail::require_prime_labeling(*r.labeling, "oracle search for n = " + std::to_string(n));
      return {std::move(*r.labeling), ConstructionMethod::oracle_search, std::nullopt, std::nullopt};
    }
  }
  throw Error(ErrorKind::unsupported_order,
              "no construction for even n = " + std::to_string(n) +
                  " (n/2 composite, above oracle limit " + std::to_string(opts.oracle_limit) + ")");
}

inline Construction construct_ladder_detailed(std::int64_t n, const ConstructOptions& opts = {}) {
  return construct_ladder_detailed(n, sieve_primes(std::max<std::int64_t>(n, 2)), opts);
}

inline Labeling construct_ladder(std::int64_t n, const PrimeSet& sieve,
                                 const ConstructOptions& opts = {}) {
  return construct_ladder_detailed(n, sieve, opts).labeling;
}

inline Labeling construct_ladder(std::int64_t n, const ConstructOptions& opts = {}) {
  return construct_ladder_detailed(n, opts).labeling;
}

}  // namespace primeladder
