#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primeladder/error.hpp"
#include "primeladder/ladder.hpp"
#include "primeladder/numtheory.hpp"

namespace primeladder {

/// Only column-major (top then bottom) filling is implemented.
enum class FillOrder { column_major };

struct SearchConfig {
  std::int64_t n = 1;
  std::optional<std::chrono::milliseconds> time_budget;
  FillOrder order = FillOrder::column_major;
  /// Restrict cell (1,1) to label 1. Off for exhaustive claims.
  bool pin_one_to_corner = false;
};

enum class SearchStatus { found, exhausted, timeout };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "FOUND";
    case SearchStatus::exhausted: return "EXHAUSTED";
    case SearchStatus::timeout: return "TIMEOUT";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<Labeling> labeling;
  std::uint64_t nodes = 0;
};

/// Depth-first search over all labelings, filling column by column and
/// trying unused labels in ascending order. A partial assignment is cut as
/// soon as a placed label shares a factor with an already placed neighbour,
/// or when a finished column carries no even label.
inline SearchResult brute_force_labeling(const SearchConfig& cfg) {
  if (cfg.n < 1) throw Error(ErrorKind::invalid_argument, "oracle needs n >= 1");
  const std::int64_t cells = 2 * cfg.n;
  using clock = std::chrono::steady_clock;
  const auto deadline = cfg.time_budget ? std::optional(clock::now() + *cfg.time_budget)
                                        : std::nullopt;

  // slot t holds cell (t % 2 + 1, t / 2 + 1)
  std::vector<Label> slot(static_cast<std::size_t>(cells), 0);
  std::vector<char> used(static_cast<std::size_t>(cells + 1), 0);

  const auto fits = [&](std::int64_t t, Label l) {
    if (t >= 2 && gcd(l, slot[static_cast<std::size_t>(t - 2)]) != 1) return false;
    if (t % 2 == 1) {
      const Label top = slot[static_cast<std::size_t>(t - 1)];
      if (gcd(l, top) != 1) return false;
      // The n even labels are pairwise non-adjacent, so every column holds
      // exactly one of them.
      if (l % 2 == 1 && top % 2 == 1) return false;
    }
    return true;
  };

  SearchResult result;
  std::int64_t t = 0;
  while (true) {
    if (t == cells) {
      std::vector<Label> top, bottom;
      for (std::int64_t i = 0; i < cells; ++i) {
        (i % 2 == 0 ? top : bottom).push_back(slot[static_cast<std::size_t>(i)]);
      }
      result.status = SearchStatus::found;
      result.labeling.emplace(std::move(top), std::move(bottom));
      return result;
    }
    if (deadline && (result.nodes & 0xff) == 0 && clock::now() >= *deadline) {
      result.status = SearchStatus::timeout;
      return result;
    }
    ++result.nodes;

    auto& current = slot[static_cast<std::size_t>(t)];
    Label from = current + 1;
    if (current != 0) used[static_cast<std::size_t>(current)] = 0;
    const Label last = (t == 0 && cfg.pin_one_to_corner) ? 1 : cells;
    Label next = 0;
    for (Label l = from; l <= last; ++l) {
      if (!used[static_cast<std::size_t>(l)] && fits(t, l)) {
        next = l;
        break;
      }
    }
    if (next != 0) {
      current = next;
      used[static_cast<std::size_t>(next)] = 1;
      ++t;
    } else {
      current = 0;
      if (t == 0) {
        result.status = SearchStatus::exhausted;
        return result;
      }
      --t;
    }
  }
}

}  // namespace primeladder
