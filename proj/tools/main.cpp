// tsort: construct, run and benchmark t-comparator sorting schedules.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsort/baseline.hpp"
#include "tsort/bench.hpp"
#include "tsort/error.hpp"
#include "tsort/randomized.hpp"
#include "tsort/schedule_io.hpp"
#include "tsort/schedules.hpp"

namespace {

using namespace tsort;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TSORT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::configuration_error, std::string("TSORT_SEED is not a number: ") + env);
    }
  }
  return 1;
}

std::string per_round(const CostReport& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.comparators_per_round.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c.comparators_per_round[i]);
  }
  return s + "]";
}

std::string rational_str(Rational r) {
  return r.is_integer() ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

struct ConstructArgs {
  std::size_t n = 0, t = 0;
  std::string force, out;
};

int cmd_construct(const ConstructArgs& a) {
  ConstructedSchedule cs;
  if (a.force.empty()) {
    cs = minimal_schedule(a.n, a.t);
  } else {
    const auto method = parse_construction(a.force);
    if (!method) throw Error(ErrorCode::configuration_error, "unknown construction '" + a.force + "'");
    try {
      cs = construct(a.n, a.t, *method);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::inapplicable) throw Error(ErrorCode::configuration_error, e.what());
      throw;
    }
  }
  const auto coverage = validate_pair_coverage(a.n, cs.schedule.rounds.front());
  const std::string provenance = std::string("construction=") + to_string(cs.choice.tag) + " " + cs.choice.certificate;
  std::cout << provenance << "\n"
            << "comparators " << cs.schedule.comparator_count() << ", gamma "
            << rational_str(make_rational(binomial2(a.n), binomial2(a.t))) << ", pair multiplicity "
            << coverage.min_multiplicity << ".." << coverage.max_multiplicity
            << (coverage.exact_once ? " (exact once)" : "") << "\n";
  if (!a.out.empty()) {
    write_schedule(a.out, cs.schedule, provenance);
    std::cout << "wrote " << a.out << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string in;
};

int cmd_verify(const VerifyArgs& a) {
  const Schedule s = read_schedule(a.in);
  if (s.rounds.size() != 1) {
    std::cout << "schedule has " << s.rounds.size() << " rounds; coverage is checked for single-round schedules\n";
    return 1;
  }
  const auto cov = validate_pair_coverage(s.n, s.rounds.front());
  std::cout << "n=" << s.n << " t=" << s.width << " comparators=" << s.comparator_count()
            << " covered_pairs=" << cov.covered_pairs << "/" << binomial2(s.n) << " multiplicity "
            << cov.min_multiplicity << ".." << cov.max_multiplicity << "\n";
  if (!cov.uncovered.empty()) {
    std::cout << "uncovered pairs: " << cov.uncovered.size() << " (first: " << cov.uncovered.front().first << ","
              << cov.uncovered.front().second << ")\n";
    return 1;
  }
  std::cout << (cov.exact_once ? "minimal: every pair exactly once\n" : "sorting: every pair covered\n");
  return 0;
}

struct RandsortArgs {
  std::size_t n = 0, t = 0;
  std::uint64_t seed = 0;
  std::string algorithm = "auto";
};

int cmd_randsort(const RandsortArgs& a) {
  const auto alg = parse_two_round_algorithm(a.algorithm);
  if (!alg) throw Error(ErrorCode::configuration_error, "unknown algorithm '" + a.algorithm + "'");
  KeyOracle oracle = KeyOracle::from_seed(a.n, a.seed, a.t);
  TwoRoundResult r;
  try {
    r = two_round_sort(oracle, *alg, a.seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::inapplicable) throw Error(ErrorCode::configuration_error, e.what());
    throw;
  }
  const bool ok = oracle.is_key_ascending(r.order);
  std::cout << "n=" << a.n << " t=" << a.t << " seed=" << a.seed << " algorithm=" << a.algorithm << "\n"
            << "pivots " << r.pivot_count << ", buckets " << r.bucket_sizes.size() << "\n"
            << "rounds " << r.cost.rounds() << ", comparators " << r.cost.total_comparators() << " "
            << per_round(r.cost) << "\n"
            << "order " << (ok ? "verified" : "WRONG") << "\n";
  return ok ? 0 : 1;
}

struct BaselineArgs {
  std::size_t n = 0, t = 0, trials = 1;
  std::uint64_t seed = 0;
  std::string log_base = "2", policy = "level-per-round";
};

int cmd_baseline(const BaselineArgs& a) {
  ExperimentConfig c;
  c.algorithm = BenchAlgorithm::baseline;
  c.n = a.n;
  c.t = a.t;
  c.trials = a.trials;
  c.master_seed = a.seed;
  const auto base = parse_log_base(a.log_base);
  const auto policy = parse_round_policy(a.policy);
  if (!base || !policy) throw Error(ErrorCode::configuration_error, "bad --log-base or --policy");
  c.baseline = {*base, *policy};
  const auto res = run_experiment(c);
  std::cout << "trial,seed,rounds,comparators\n";
  for (const auto& r : res.records) {
    std::cout << r.trial << "," << r.seed << "," << r.rounds << "," << r.total_comparators << "\n";
  }
  std::cout << "# mean rounds " << res.summary.rounds.mean << ", mean comparators " << res.summary.comparators.mean
            << "\n";
  return 0;
}

struct BenchRunArgs {
  std::string alg, out, histogram, format = "csv";
  std::size_t n = 0, t = 0, trials = 1, threads = 1;
  std::uint64_t seed = 0;
};

int cmd_bench_run(const BenchRunArgs& a) {
  const auto alg = parse_bench_algorithm(a.alg);
  if (!alg) throw Error(ErrorCode::configuration_error, "unknown algorithm '" + a.alg + "'");
  ExperimentConfig c;
  c.algorithm = *alg;
  c.n = a.n;
  c.t = a.t;
  c.trials = a.trials;
  c.master_seed = a.seed;
  c.threads = a.threads;
  const auto res = run_experiment(c);
  if (!a.out.empty()) write_csv(a.out, res.records);
  if (!a.histogram.empty()) {
    std::ofstream h(a.histogram, std::ios::binary);
    h << histogram_csv(res.summary);
  }
  if (a.format == "table") {
    const auto& s = res.summary;
    std::printf("%-12s %8s %8s %8s %8s\n", "", "mean", "median", "max", "stddev");
    std::printf("%-12s %8.3f %8.1f %8.0f %8.3f\n", "rounds", s.rounds.mean, s.rounds.median, s.rounds.max,
                s.rounds.stddev);
    std::printf("%-12s %8.1f %8.1f %8.0f %8.2f\n", "comparators", s.comparators.mean, s.comparators.median,
                s.comparators.max, s.comparators.stddev);
    std::cout << histogram_csv(s);
  } else if (a.out.empty()) {
    std::cout << to_csv(res.records);
  }
  return 0;
}

struct BenchCompareArgs {
  std::size_t n = 0, t = 0, trials = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> algs{"minimal", "randomized", "baseline"};
};

int cmd_bench_compare(const BenchCompareArgs& a) {
  std::vector<ExperimentConfig> configs;
  for (const auto& name : a.algs) {
    const auto alg = parse_bench_algorithm(name);
    if (!alg) throw Error(ErrorCode::configuration_error, "unknown algorithm '" + name + "'");
    ExperimentConfig c;
    c.algorithm = *alg;
    c.n = a.n;
    c.t = a.t;
    c.trials = a.trials;
    c.master_seed = a.seed;
    configs.push_back(c);
  }
  const auto rows = compare_table(configs);
  std::cout << format_table(rows);
  return 0;
}

struct BucketArgs {
  std::size_t n = 0, t = 0, trials = 1, pivots = 0;
  std::uint64_t seed = 0;
  bool distinct = false;
};

int cmd_buckets(const BucketArgs& a) {
  BucketStatsOptions o;
  o.pivot_count = a.pivots;
  o.sampling = a.distinct ? PivotSampling::without_replacement : PivotSampling::with_replacement_dedup;
  const auto s = bucket_size_stats(a.n, a.t, a.trials, a.seed, o);
  std::cout << "pivots requested " << s.pivots_requested << ", buckets " << s.sizes.size() << "\n"
            << "size mean " << s.mean << " (n/m = " << s.reference_size << "), p50 " << s.p50 << ", p90 " << s.p90
            << ", p99 " << s.p99 << ", max " << s.max << "\n"
            << "fraction above (n/m)log2(n/m) = " << s.large_threshold << ": " << s.fraction_large << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sorting with t-way comparators: schedules, two-round algorithms, benchmarks"};
  app.require_subcommand(1);

  std::uint64_t env_seed = 1;
  try {
    env_seed = default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a single-round sorting schedule");
  construct_cmd->add_option("--n", ca.n, "Number of elements")->required()->check(CLI::PositiveNumber);
  construct_cmd->add_option("--t", ca.t, "Comparator width")->required()->check(CLI::Range(2, 1 << 30));
  construct_cmd->add_option("--force", ca.force,
                            "trivial|three-comparator|minimal-design|composed|partition");
  construct_cmd->add_option("--out", ca.out, "Write the schedule here");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check pair coverage of a schedule file");
  verify_cmd->add_option("--in", va.in, "Schedule file")->required()->check(CLI::ExistingFile);

  RandsortArgs ra;
  ra.seed = env_seed;
  auto* randsort_cmd = app.add_subcommand("randsort", "Run one two-round randomized sort");
  randsort_cmd->add_option("--n", ra.n, "Number of elements")->required()->check(CLI::PositiveNumber);
  randsort_cmd->add_option("--t", ra.t, "Comparator width")->required()->check(CLI::Range(2, 1 << 30));
  randsort_cmd->add_option("--seed", ra.seed, "Seed (default: $TSORT_SEED or 1)");
  randsort_cmd->add_option("--algorithm", ra.algorithm, "square|general|large-t|auto");

  BaselineArgs ba;
  ba.seed = env_seed;
  auto* baseline_cmd = app.add_subcommand("baseline", "Run the recursive t-quicksort baseline");
  baseline_cmd->add_option("--n", ba.n, "Number of elements")->required()->check(CLI::PositiveNumber);
  baseline_cmd->add_option("--t", ba.t, "Comparator width")->required()->check(CLI::Range(3, 1 << 30));
  baseline_cmd->add_option("--seed", ba.seed, "Master seed (default: $TSORT_SEED or 1)");
  baseline_cmd->add_option("--trials", ba.trials, "Number of trials")->check(CLI::PositiveNumber);
  baseline_cmd->add_option("--log-base", ba.log_base, "2|e");
  baseline_cmd->add_option("--policy", ba.policy, "level-per-round|terminal-sorts-free");

  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo experiments");
  bench_cmd->require_subcommand(1);
  BenchRunArgs br;
  br.seed = env_seed;
  auto* run_cmd = bench_cmd->add_subcommand("run", "Run trials of one algorithm");
  run_cmd->add_option("--alg", br.alg, "minimal|square|general|large-t|randomized|baseline")->required();
  run_cmd->add_option("--n", br.n, "Number of elements")->required();
  run_cmd->add_option("--t", br.t, "Comparator width")->required();
  run_cmd->add_option("--trials", br.trials, "Number of trials");
  run_cmd->add_option("--seed", br.seed, "Master seed (default: $TSORT_SEED or 1)");
  run_cmd->add_option("--out", br.out, "Per-trial CSV");
  run_cmd->add_option("--histogram", br.histogram, "Round-count histogram CSV");
  run_cmd->add_option("--format", br.format, "csv|table")->check(CLI::IsMember({"csv", "table"}));
  run_cmd->add_option("--threads", br.threads, "Worker threads");

  BenchCompareArgs bc;
  bc.seed = env_seed;
  auto* compare_cmd = bench_cmd->add_subcommand("compare", "Side-by-side summary with the gamma reference");
  compare_cmd->add_option("--n", bc.n, "Number of elements")->required();
  compare_cmd->add_option("--t", bc.t, "Comparator width")->required();
  compare_cmd->add_option("--trials", bc.trials, "Trials per algorithm");
  compare_cmd->add_option("--seed", bc.seed, "Master seed (default: $TSORT_SEED or 1)");
  compare_cmd->add_option("--algs", bc.algs, "Algorithms to compare")->delimiter(',');

  BucketArgs bk;
  bk.seed = env_seed;
  auto* buckets_cmd = app.add_subcommand("buckets", "Bucket-size statistics of pivot sampling");
  buckets_cmd->add_option("--n", bk.n, "Number of elements")->required()->check(CLI::PositiveNumber);
  buckets_cmd->add_option("--t", bk.t, "Comparator width")->required()->check(CLI::Range(2, 1 << 30));
  buckets_cmd->add_option("--trials", bk.trials, "Number of trials")->check(CLI::PositiveNumber);
  buckets_cmd->add_option("--seed", bk.seed, "Seed (default: $TSORT_SEED or 1)");
  buckets_cmd->add_option("--pivots", bk.pivots, "Pivot count (0: algorithm default)");
  buckets_cmd->add_flag("--distinct", bk.distinct, "Draw until the pivots are distinct");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct_cmd) return cmd_construct(ca);
    if (*verify_cmd) return cmd_verify(va);
    if (*randsort_cmd) return cmd_randsort(ra);
    if (*baseline_cmd) return cmd_baseline(ba);
    if (*run_cmd) return cmd_bench_run(br);
    if (*compare_cmd) return cmd_bench_compare(bc);
    if (*buckets_cmd) return cmd_buckets(bk);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::configuration_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
