#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "primeladder/error.hpp"

namespace primeladder {

inline constexpr int kCheckpointVersion = 1;
inline constexpr int kReportVersion = 1;

/// Knobs shared by every chunked range verification.
struct ScanOptions {
  int workers = 1;
  /// Consecutive eligible values per chunk; also the checkpoint granularity.
  std::int64_t chunk_size = std::int64_t{1} << 16;
  /// Progress file; created if absent, resumed from if present.
  std::optional<std::filesystem::path> checkpoint;
  /// Stop after this many chunks in this invocation (0 = no limit). The
  /// report comes back with complete == false.
  std::int64_t max_chunks = 0;
  /// Keep the witness of every k-th eligible value (0 = none).
  std::int64_t witness_stride = 0;
};

/// Outcome of a scan over the eligible values of [lo, hi]. Bounds are
/// inclusive.
template <class Witness>
struct RangeReport {
  std::string conjecture_id;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::string eligible;  // which n in [lo, hi] are checked
  std::int64_t verified_count = 0;
  std::vector<std::int64_t> counterexamples;
  std::map<std::int64_t, Witness> sample_witnesses;
  std::chrono::duration<double> elapsed{};
  std::int64_t chunk_size = 0;
  bool complete = false;
};

/// Eligible values form the progression first, first + step, ... (count terms).
struct Progression {
  std::int64_t first = 0;
  std::int64_t step = 1;
  std::int64_t count = 0;

  std::int64_t at(std::int64_t i) const { return first + i * step; }
};

/// Checkpoint document. Field names are part of the file format.
struct Checkpoint {
  std::string conjecture;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t verified_up_to = 0;
  std::vector<std::int64_t> counterexamples;
  std::int64_t chunk_size = 0;
  int version = kCheckpointVersion;
};

inline nlohmann::json to_json(const Checkpoint& c) {
  return nlohmann::json{{"conjecture", c.conjecture},
                        {"lo", c.lo},
                        {"hi", c.hi},
                        {"verified_up_to", c.verified_up_to},
                        {"counterexamples", c.counterexamples},
                        {"chunk_size", c.chunk_size},
                        {"version", c.version}};
}

inline Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::checkpoint_error, "cannot read " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    Checkpoint c;
    c.conjecture = j.at("conjecture").get<std::string>();
    c.lo = j.at("lo").get<std::int64_t>();
    c.hi = j.at("hi").get<std::int64_t>();
    c.verified_up_to = j.at("verified_up_to").get<std::int64_t>();
    c.counterexamples = j.at("counterexamples").get<std::vector<std::int64_t>>();
    c.chunk_size = j.at("chunk_size").get<std::int64_t>();
    c.version = j.at("version").get<int>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::checkpoint_error, path.string() + ": " + e.what());
  }
}

/// Write-then-rename so a crash never leaves a truncated checkpoint.
inline void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::checkpoint_error, "cannot write " + tmp.string());
    out << to_json(c).dump() << '\n';
    if (!out) throw Error(ErrorKind::checkpoint_error, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::checkpoint_error, "cannot replace " + path.string() + ": " + ec.message());
}

/// Runs `check` on every value of `values`, chunk by chunk across
/// `opts.workers` threads. `check(n)` returns the witness for n or nullopt
/// for a counterexample. Chunks finish in any order but are merged, and
/// checkpointed, strictly in ascending order, so the report does not depend
/// on scheduling or on where a previous run stopped.
template <class Witness, class Check>
RangeReport<Witness> run_range_scan(const std::string& conjecture_id, std::int64_t lo,
                                    std::int64_t hi, std::string eligible,
                                    const Progression& values, const ScanOptions& opts,
                                    Check check) {
  if (opts.workers < 1) throw Error(ErrorKind::invalid_argument, "workers must be >= 1");
  if (opts.chunk_size < 1) throw Error(ErrorKind::invalid_argument, "chunk_size must be >= 1");
  const auto started = std::chrono::steady_clock::now();

  RangeReport<Witness> report;
  report.conjecture_id = conjecture_id;
  report.lo = lo;
  report.hi = hi;
  report.eligible = std::move(eligible);
  report.chunk_size = opts.chunk_size;

  const std::int64_t total_chunks = (values.count + opts.chunk_size - 1) / opts.chunk_size;
  std::int64_t first_chunk = 0;

  if (opts.checkpoint && std::filesystem::exists(*opts.checkpoint)) {
    const Checkpoint c = read_checkpoint(*opts.checkpoint);
    if (c.version != kCheckpointVersion || c.conjecture != conjecture_id || c.lo != lo ||
        c.hi != hi || c.chunk_size != opts.chunk_size) {
      throw Error(ErrorKind::checkpoint_error,
                  opts.checkpoint->string() + " was written for a different scan");
    }
    // verified_up_to must sit on a chunk boundary of this progression.
    std::int64_t done = 0;
    if (c.verified_up_to >= values.first && values.count > 0) {
      done = (std::min(c.verified_up_to, values.at(values.count - 1)) - values.first) / values.step + 1;
    }
    const bool aligned = done == values.count || done % opts.chunk_size == 0;
    const bool consistent = done == 0 ? c.verified_up_to == lo - 1
                                      : values.at(done - 1) == c.verified_up_to;
    if (!aligned || !consistent) {
      throw Error(ErrorKind::checkpoint_error,
                  opts.checkpoint->string() + ": verified_up_to " +
                      std::to_string(c.verified_up_to) + " is not a chunk boundary");
    }
    for (const std::int64_t n : c.counterexamples) {
      if (n < lo || n > c.verified_up_to) {
        throw Error(ErrorKind::checkpoint_error,
                    opts.checkpoint->string() + ": counterexample " + std::to_string(n) +
                        " outside the verified prefix");
      }
    }
    report.counterexamples = c.counterexamples;
    first_chunk = (done + opts.chunk_size - 1) / opts.chunk_size;
  }

  std::int64_t end_chunk = total_chunks;
  if (opts.max_chunks > 0) end_chunk = std::min(total_chunks, first_chunk + opts.max_chunks);

  struct ChunkResult {
    bool done = false;
    std::vector<std::int64_t> counterexamples;
    std::map<std::int64_t, Witness> witnesses;
  };
  std::vector<ChunkResult> results(static_cast<std::size_t>(end_chunk - first_chunk));
  std::atomic<std::int64_t> next_chunk{first_chunk};
  std::mutex merge_mutex;
  std::int64_t frontier = first_chunk;  // chunks [0, frontier) merged
  std::exception_ptr failure;

  const auto last_value_of = [&](std::int64_t chunk) {
    return values.at(std::min(values.count, (chunk + 1) * opts.chunk_size) - 1);
  };

  // Folds every finished chunk at the frontier into the report, then
  // records progress. Caller holds merge_mutex.
  const auto advance_frontier = [&] {
    bool moved = false;
    while (frontier < end_chunk && results[static_cast<std::size_t>(frontier - first_chunk)].done) {
      auto& r = results[static_cast<std::size_t>(frontier - first_chunk)];
      report.counterexamples.insert(report.counterexamples.end(), r.counterexamples.begin(),
                                    r.counterexamples.end());
      report.sample_witnesses.merge(r.witnesses);
      r = ChunkResult{true, {}, {}};
      ++frontier;
      moved = true;
    }
    if (moved && opts.checkpoint) {
      write_checkpoint(*opts.checkpoint, Checkpoint{conjecture_id, lo, hi, last_value_of(frontier - 1),
                                                    report.counterexamples, opts.chunk_size,
                                                    kCheckpointVersion});
    }
  };

  const auto worker = [&] {
    while (true) {
      const std::int64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= end_chunk) return;
      {
        std::lock_guard lock(merge_mutex);
        if (failure) return;
      }
      ChunkResult local;
      try {
        const std::int64_t begin = chunk * opts.chunk_size;
        const std::int64_t end = std::min(values.count, begin + opts.chunk_size);
        for (std::int64_t i = begin; i < end; ++i) {
          const std::int64_t n = values.at(i);
          auto w = check(n);
          if (!w) {
            local.counterexamples.push_back(n);
          } else if (opts.witness_stride > 0 && i % opts.witness_stride == 0) {
            local.witnesses.emplace(n, std::move(*w));
          }
        }
        local.done = true;
        std::lock_guard lock(merge_mutex);
        results[static_cast<std::size_t>(chunk - first_chunk)] = std::move(local);
        advance_frontier();
      } catch (...) {
        std::lock_guard lock(merge_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int thread_count =
      static_cast<int>(std::min<std::int64_t>(opts.workers, std::max<std::int64_t>(1, end_chunk - first_chunk)));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const std::int64_t done_values = std::min(values.count, frontier * opts.chunk_size);
  report.verified_count = done_values;
  report.complete = frontier == total_chunks;
  report.elapsed = std::chrono::steady_clock::now() - started;
  if (opts.checkpoint && frontier == first_chunk && !std::filesystem::exists(*opts.checkpoint)) {
    // Nothing was processed (empty range or zero chunks): still leave a
    // checkpoint so the file always reflects the scan it names.
    const std::int64_t upto = frontier == 0 ? lo - 1 : last_value_of(frontier - 1);
    write_checkpoint(*opts.checkpoint, Checkpoint{conjecture_id, lo, hi, upto,
                                                  report.counterexamples, opts.chunk_size,
                                                  kCheckpointVersion});
  }
  return report;
}

/// Report as JSON. Timing lives only in "elapsed_seconds"; witnesses are
/// not included (they are written separately as CSV).
template <class Witness>
nlohmann::json report_to_json(const RangeReport<Witness>& r) {
  return nlohmann::json{{"version", kReportVersion},
                        {"conjecture", r.conjecture_id},
                        {"lo", r.lo},
                        {"hi", r.hi},
                        {"eligible", r.eligible},
                        {"verified_count", r.verified_count},
                        {"counterexamples", r.counterexamples},
                        {"chunk_size", r.chunk_size},
                        {"complete", r.complete},
                        {"elapsed_seconds", r.elapsed.count()}};
}

}  // namespace primeladder
