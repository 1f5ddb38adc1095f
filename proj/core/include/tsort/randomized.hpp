#pragma once

// Las-Vegas two-round sorting. Round 1 samples pivots and sorts every group
// of the remaining elements jointly with all pivots, which places each
// element in a bucket between consecutive pivots. Round 2 sorts each bucket
// with a single-round schedule. Output is always correct; only the number of
// comparators is random.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tsort/core.hpp"
#include "tsort/rng.hpp"

namespace tsort {

struct SortResult {
  std::vector<ElementId> order;
  CostReport cost;
};

enum class PivotSampling {
  /// m independent uniform draws, duplicates dropped (|P| <= m).
  with_replacement_dedup,
  /// The same m draws, then further draws until m distinct pivots exist.
  /// Always a superset of the dedup pivots for the same seed.
  without_replacement,
};

struct TwoRoundOptions {
  PivotSampling sampling = PivotSampling::with_replacement_dedup;
};

struct Bucket {
  std::size_t index = 0;
  std::vector<ElementId> members;
};

struct Bucketing {
  std::vector<ElementId> sorted_pivots;
  std::vector<Bucket> buckets;  // sorted_pivots.size() + 1 entries
};

struct TwoRoundResult : SortResult {
  std::size_t pivot_count = 0;
  std::vector<std::size_t> bucket_sizes;
};

enum class TwoRoundAlgorithm { square, general, large_t, automatic };

const char* to_string(TwoRoundAlgorithm a) noexcept;
std::optional<TwoRoundAlgorithm> parse_two_round_algorithm(std::string_view name) noexcept;

std::size_t ceil_sqrt(std::size_t n) noexcept;

/// Pivot ids drawn uniformly from [0, n), in draw order.
std::vector<ElementId> sample_pivots(std::size_t n, std::size_t count, Rng& rng, PivotSampling mode);

/// Reads every element's position relative to every pivot off the round-1
/// outcomes. Throws protocol_violation if some element/pivot pair was never
/// compared (or was observed inconsistently).
Bucketing bucketize(std::size_t n, std::span<const ElementId> pivots,
                    std::span<const ComparatorOutcome> round1);

/// n = t^2, t even: t/2 pivots, one t-comparator per group of t/2 elements
/// plus all pivots. Throws inapplicable otherwise. The comparator width is
/// the oracle's width.
TwoRoundResult two_round_sort_square(KeyOracle& oracle, std::uint64_t seed,
                                     const TwoRoundOptions& options = {});

/// t <= ceil(sqrt(n)): m = ceil(sqrt(n)) pivots; each group of m elements is
/// sorted together with the pivots by a partition schedule.
TwoRoundResult two_round_sort_general(KeyOracle& oracle, std::uint64_t seed,
                                      const TwoRoundOptions& options = {});

/// ceil(sqrt(n)) < t < n: ceil(n/t) pivots, groups of at most t elements.
TwoRoundResult two_round_sort_large_t(KeyOracle& oracle, std::uint64_t seed,
                                      const TwoRoundOptions& options = {});

/// automatic: a single comparator when n <= t, otherwise general or large-t
/// by the ceil(sqrt(n)) boundary.
TwoRoundResult two_round_sort(KeyOracle& oracle, TwoRoundAlgorithm algorithm, std::uint64_t seed,
                              const TwoRoundOptions& options = {});

struct BucketStatsOptions {
  std::size_t pivot_count = 0;  // 0: the general/large-t choice for (n, t)
  PivotSampling sampling = PivotSampling::with_replacement_dedup;
};

struct BucketStats {
  std::size_t trials = 0;
  std::size_t pivots_requested = 0;
  std::vector<std::size_t> sizes;  // every bucket of every trial, ascending
  std::size_t max = 0;
  double mean = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  double reference_size = 0.0;     // n / m
  double large_threshold = 0.0;    // (n/m) * log2(n/m)
  double fraction_large = 0.0;     // fraction of buckets above large_threshold

  double fraction_above(double size) const noexcept;
};

/// Bucket sizes induced by sampled pivots over independent trials.
/// Deterministic for a fixed seed. Throws invalid_input if trials == 0.
BucketStats bucket_size_stats(std::size_t n, std::size_t t, std::size_t trials, std::uint64_t seed,
                              const BucketStatsOptions& options = {});

}  // namespace tsort
