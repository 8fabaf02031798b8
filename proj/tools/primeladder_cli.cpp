// primeladder: construct and verify prime labelings of ladders, search
// canonical partitions, and scan the strengthened Lemoine conjecture.
//
// Exit codes: 0 success / prime, 1 negative but valid result, 2 malformed
// input or arguments, 3 checkpoint error, 4 timeout.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "primeladder/primeladder.hpp"

namespace pl = primeladder;

namespace {

enum Exit : int { kOk = 0, kNegative = 1, kMalformed = 2, kCheckpoint = 3, kTimeout = 4 };

int exit_code_for(pl::ErrorKind kind) {
  switch (kind) {
    case pl::ErrorKind::invalid_argument:
    case pl::ErrorKind::malformed_labeling:
    case pl::ErrorKind::invalid_label:
    case pl::ErrorKind::parse_error:
    case pl::ErrorKind::coverage_exceeded:
      return kMalformed;
    case pl::ErrorKind::checkpoint_error:
      return kCheckpoint;
    case pl::ErrorKind::unsupported_order:
    case pl::ErrorKind::witness_not_found:
    case pl::ErrorKind::construction_failed:
      return kNegative;
  }
  return kMalformed;
}

nlohmann::json rows_json(const pl::Labeling& l) {
  return nlohmann::json::array({l.row(1), l.row(2)});
}

void print_labeling(const pl::Labeling& l, const std::string& format, nlohmann::json extra = {}) {
  if (format == "csv") {
    std::cout << pl::to_csv(l);
  } else if (format == "json") {
    nlohmann::json j{{"version", 1}, {"n", l.columns()}, {"rows", rows_json(l)}};
    if (extra.is_object()) j.update(extra);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << pl::to_ascii_grid(l);
  }
}

nlohmann::json plan_json(const pl::SwapPlan& plan) {
  nlohmann::json swaps = nlohmann::json::array();
  for (const auto& [a, b] : plan.swaps) swaps.push_back({a, b});
  return {{"swaps", swaps}, {"rule", plan.rule_tag}, {"repaired_by_search", plan.repaired_by_search}};
}

struct ConstructArgs {
  std::optional<std::int64_t> n, p, q;
  std::string format = "ascii";
  std::int64_t oracle_limit = pl::ConstructOptions{}.oracle_limit;
};

int run_construct(const ConstructArgs& a) {
  if (a.n.has_value() == a.p.has_value()) {
    std::cerr << "construct: give exactly one of --n or --p [--q]\n";
    return kMalformed;
  }
  if (a.p) {
    if (a.q) {
      const auto t = pl::theorem_construction(*a.p, *a.q);
      print_labeling(t.labeling, a.format,
                     {{"method", "theorem_2p_q"},
                      {"p", *a.p},
                      {"q", *a.q},
                      {"j_star", t.column.j_star},
                      {"plan", plan_json(t.plan)}});
      if (t.plan.repaired_by_search) {
        std::cerr << "note: case analysis did not apply for p=" << *a.p << ", q=" << *a.q
                  << "; repaired by exhaustive swap search\n";
      }
    } else {
      print_labeling(pl::lemma_ladder_2p(*a.p), a.format, {{"method", "lemma_2p"}, {"p", *a.p}});
    }
    return kOk;
  }
  pl::ConstructOptions opts;
  opts.oracle_limit = a.oracle_limit;
  // Only odd n >= 7 need a witness, hence a sieve.
  const std::int64_t n = *a.n;
  const auto c = (n >= 7 && n % 2 == 1) ? pl::construct_ladder_detailed(n, pl::sieve_primes(n), opts)
                                        : pl::construct_ladder_detailed(n, pl::PrimeSet(2), opts);
  nlohmann::json extra{{"method", pl::to_string(c.method)}};
  if (c.witness) extra["witness"] = {{"p", c.witness->p()}, {"q", c.witness->q()}};
  if (c.plan) extra["plan"] = plan_json(*c.plan);
  print_labeling(c.labeling, a.format, extra);
  return kOk;
}

int run_verify(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "verify: cannot open " << path << '\n';
      return kMalformed;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  const pl::Labeling l = pl::parse_csv(text);
  const auto bad = pl::verify_labeling(l);
  if (bad.empty()) {
    std::cout << "PRIME\n";
    return kOk;
  }
  for (const auto& v : bad) std::cout << v << '\n';
  return kNegative;
}

struct LemoineArgs {
  std::int64_t min = 7;
  std::int64_t max = 0;
  int jobs = 1;
  std::string checkpoint;
  std::string witnesses;
  std::int64_t witness_every = 1;
  std::int64_t max_chunks = 0;
  std::int64_t chunk_size = std::int64_t{1} << 16;
};

int run_lemoine(const LemoineArgs& a) {
  pl::ScanOptions opts;
  opts.workers = a.jobs;
  opts.chunk_size = a.chunk_size;
  opts.max_chunks = a.max_chunks;
  if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
  if (!a.witnesses.empty()) opts.witness_stride = a.witness_every;
  if (a.max < a.min || a.min < 7) {
    std::cerr << "lemoine: need 7 <= --min <= --max\n";
    return kMalformed;
  }
  const pl::PrimeSet sieve(a.max);
  const auto report = pl::verify_lemoine_range(a.min, a.max, sieve, opts);
  std::cout << pl::report_to_json(report).dump(2) << '\n';
  if (!a.witnesses.empty()) {
    std::ofstream out(a.witnesses);
    out << "n,p,q\n";
    for (const auto& [n, w] : report.sample_witnesses) out << n << ',' << w.p() << ',' << w.q() << '\n';
  }
  if (!report.counterexamples.empty()) {
    std::cerr << "COUNTEREXAMPLES to the strengthened Lemoine conjecture:";
    for (const auto n : report.counterexamples) std::cerr << ' ' << n;
    std::cerr << '\n';
    return kNegative;
  }
  return kOk;
}

struct PartitionArgs {
  std::optional<std::int64_t> n, min, max;
  int max_terms = 3;
  bool strong = false;
  bool all = false;
  bool exact = false;
  std::string parity = "all";
  int jobs = 1;
  std::string witnesses;
  std::int64_t witness_every = 1;
};

const char* tag(const pl::Partition& p) { return pl::is_strong(p) ? "[strong]" : "[weak]"; }

int run_partition(const PartitionArgs& a) {
  const pl::PartitionQuery query{a.max_terms, a.strong, a.exact};
  if (a.n) {
    if (a.min || a.max) {
      std::cerr << "partition: --n cannot be combined with --min/--max\n";
      return kMalformed;
    }
    const pl::PrimeSet sieve(std::max<std::int64_t>(*a.n, 2));
    if (a.all) {
      int listed = 0;
      for (const auto& p : pl::enumerate_canonical(*a.n, a.max_terms, sieve)) {
        if (a.exact && static_cast<int>(p.size()) != a.max_terms) continue;
        if (a.strong && !pl::is_strong(p)) continue;
        std::cout << p << ' ' << tag(p) << '\n';
        ++listed;
      }
      return listed > 0 ? kOk : kNegative;
    }
    const auto found = pl::find_canonical(*a.n, query, sieve);
    if (!found) {
      std::cout << "none\n";
      return kNegative;
    }
    std::cout << *found << ' ' << tag(*found) << '\n';
    return kOk;
  }
  if (!a.min || !a.max) {
    std::cerr << "partition: give --n, or both --min and --max\n";
    return kMalformed;
  }
  pl::ScanOptions opts;
  opts.workers = a.jobs;
  if (!a.witnesses.empty()) opts.witness_stride = a.witness_every;
  const pl::Parity parity = a.parity == "odd" ? pl::Parity::odd
                            : a.parity == "even" ? pl::Parity::even
                                                 : pl::Parity::all;
  const pl::PrimeSet sieve(*a.max);
  const auto report = pl::verify_strong_range(*a.min, *a.max, query, parity, sieve, opts);
  std::cout << pl::report_to_json(report).dump(2) << '\n';
  if (!a.witnesses.empty()) {
    std::ofstream out(a.witnesses);
    const int columns = std::max(3, a.max_terms);
    out << "n,term_count";
    for (int i = 1; i <= columns; ++i) out << ",p" << i;
    out << '\n';
    for (const auto& [n, p] : report.sample_witnesses) {
      out << n << ',' << p.size();
      for (int i = 0; i < columns; ++i) {
        out << ',';
        if (static_cast<std::size_t>(i) < p.size()) out << p.parts()[static_cast<std::size_t>(i)];
      }
      out << '\n';
    }
  }
  return report.counterexamples.empty() ? kOk : kNegative;
}

struct OracleArgs {
  std::int64_t n = 1;
  std::optional<std::int64_t> timeout_ms;
  bool pin_one = false;
  std::string format = "ascii";
};

int run_oracle(const OracleArgs& a) {
  pl::SearchConfig cfg;
  cfg.n = a.n;
  cfg.pin_one_to_corner = a.pin_one;
  if (a.timeout_ms) cfg.time_budget = std::chrono::milliseconds(*a.timeout_ms);
  const auto r = pl::brute_force_labeling(cfg);
  switch (r.status) {
    case pl::SearchStatus::found:
      print_labeling(*r.labeling, a.format, {{"method", "oracle_search"}, {"nodes", r.nodes}});
      return kOk;
    case pl::SearchStatus::exhausted:
      std::cout << "EXHAUSTED\n";
      return kNegative;
    case pl::SearchStatus::timeout:
      std::cout << "TIMEOUT\n";
      return kTimeout;
  }
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime labelings of ladders P2 x Pn, canonical partitions and Lemoine scans"};
  app.require_subcommand(1);

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Build a prime labeling of L_n");
  auto* c_n = c->add_option("--n", construct.n, "Ladder order (number of columns)")->check(CLI::PositiveNumber);
  auto* c_p = c->add_option("--p", construct.p, "Prime p: L_2p alone, or L_{2p+q} with --q");
  c->add_option("--q", construct.q, "Odd prime q (needs --p and p < 2q)")->needs(c_p);
  c_n->excludes(c_p);
  c->add_option("--format", construct.format, "ascii | csv | json")
      ->check(CLI::IsMember({"ascii", "csv", "json"}));
  c->add_option("--oracle-limit", construct.oracle_limit,
                "Largest even n (n/2 composite) handed to the brute-force search");

  std::string verify_path;
  auto* v = app.add_subcommand("verify", "Check a CSV labeling; '-' reads standard input");
  v->add_option("file", verify_path, "Labeling CSV file")->required();

  LemoineArgs lemoine;
  auto* l = app.add_subcommand("lemoine", "Verify the strengthened Lemoine conjecture on [min, max]");
  l->add_option("--min", lemoine.min, "Lower bound (>= 7)");
  l->add_option("--max", lemoine.max, "Upper bound, inclusive")->required();
  l->add_option("--jobs", lemoine.jobs, "Worker threads")->check(CLI::PositiveNumber);
  l->add_option("--checkpoint", lemoine.checkpoint, "Progress file; resumed from if present");
  l->add_option("--witnesses", lemoine.witnesses, "Write sampled witnesses as CSV n,p,q");
  l->add_option("--witness-every", lemoine.witness_every, "Keep every k-th witness")
      ->check(CLI::PositiveNumber);
  l->add_option("--max-chunks", lemoine.max_chunks, "Stop after this many chunks (resume later)");
  l->add_option("--chunk-size", lemoine.chunk_size, "Odd values per chunk")->check(CLI::PositiveNumber);

  PartitionArgs partition;
  auto* p = app.add_subcommand("partition", "Canonical partitions of n, or a range check");
  p->add_option("--n", partition.n, "Integer to partition (>= 3)");
  p->add_option("--min", partition.min, "Range mode lower bound (>= 50)");
  p->add_option("--max", partition.max, "Range mode upper bound");
  p->add_option("--max-terms", partition.max_terms, "At most this many parts (1..4)")
      ->check(CLI::Range(1, 4));
  p->add_flag("--strong", partition.strong, "Only strong canonical partitions");
  p->add_flag("--all", partition.all, "List every canonical partition");
  p->add_flag("--exact", partition.exact, "Exactly --max-terms parts");
  p->add_option("--parity", partition.parity, "Range mode: all | odd | even")
      ->check(CLI::IsMember({"all", "odd", "even"}));
  p->add_option("--jobs", partition.jobs, "Worker threads (range mode)")->check(CLI::PositiveNumber);
  p->add_option("--witnesses", partition.witnesses, "Range mode: CSV n,term_count,p1,p2,p3");
  p->add_option("--witness-every", partition.witness_every, "Keep every k-th witness")
      ->check(CLI::PositiveNumber);

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Brute-force search for a prime labeling of L_n");
  o->add_option("--n", oracle.n, "Ladder order")->required()->check(CLI::PositiveNumber);
  o->add_option("--timeout-ms", oracle.timeout_ms, "Search budget in milliseconds");
  o->add_flag("--pin-one", oracle.pin_one, "Fix label 1 at the top-left corner");
  o->add_option("--format", oracle.format, "ascii | csv | json")
      ->check(CLI::IsMember({"ascii", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (*c) return run_construct(construct);
    if (*v) return run_verify(verify_path);
    if (*l) return run_lemoine(lemoine);
    if (*p) return run_partition(partition);
    if (*o) return run_oracle(oracle);
  } catch (const pl::Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kMalformed;
}
