#pragma once

// Monte-Carlo harness: runs seeded trial batches of one algorithm, records
// per-trial costs, summarises them and round-trips the records through CSV.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsort/baseline.hpp"

namespace tsort {

enum class BenchAlgorithm { minimal, square, general, large_t, randomized, baseline };

const char* to_string(BenchAlgorithm a) noexcept;
std::optional<BenchAlgorithm> parse_bench_algorithm(std::string_view name) noexcept;

struct ExperimentConfig {
  BenchAlgorithm algorithm = BenchAlgorithm::minimal;
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  BaselineOptions baseline{};
  std::size_t threads = 1;  // records do not depend on this
};

/// Seed of trial `index`: derive_seed(master_seed, index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) noexcept;

/// Throws configuration_error (with the reason) if the algorithm does not
/// apply to (n, t) or trials == 0.
void validate(const ExperimentConfig& config);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  std::uint64_t total_comparators = 0;
  std::vector<std::uint64_t> comparators_per_round;
  double wall_time_ms = 0.0;  // not serialised

  bool same_result(const TrialRecord& o) const noexcept {
    return trial == o.trial && seed == o.seed && rounds == o.rounds && total_comparators == o.total_comparators &&
           comparators_per_round == o.comparators_per_round;
  }
};

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double stddev = 0.0;  // population

  friend bool operator==(const Stats&, const Stats&) = default;
};

struct Summary {
  std::size_t trials = 0;
  Stats rounds;
  Stats comparators;
  std::map<std::size_t, std::size_t> round_histogram;  // rounds -> trials

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // trial-index order
  Summary summary;
};

/// Runs one trial with the given seed: a fresh oracle with random keys and
/// width t, the algorithm, and a check of the output order (a wrong order
/// throws protocol_violation).
TrialRecord run_trial(const ExperimentConfig& config, std::size_t index);

ExperimentResult run_experiment(const ExperimentConfig& config);

Summary summarize(std::span<const TrialRecord> records);

std::string to_csv(std::span<const TrialRecord> records);
std::vector<TrialRecord> parse_csv(std::string_view text);
void write_csv(const std::filesystem::path& path, std::span<const TrialRecord> records);
std::vector<TrialRecord> read_csv(const std::filesystem::path& path);

/// "rounds,trials" rows, one per unit-width bin from min to max rounds.
std::string histogram_csv(const Summary& summary);

struct CompareRow {
  BenchAlgorithm algorithm = BenchAlgorithm::minimal;
  std::size_t n = 0;
  std::size_t t = 0;
  double mean_comparators = 0.0;
  double mean_rounds = 0.0;
  double gamma = 0.0;
  double ratio = 0.0;  // mean_comparators / gamma
};

/// One row per config. Throws configuration_error unless all configs share
/// (n, t).
std::vector<CompareRow> compare_table(std::span<const ExperimentConfig> configs);
std::string format_table(std::span<const CompareRow> rows);

}  // namespace tsort
