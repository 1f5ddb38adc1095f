#pragma once

// Problem model for sorting with t-way comparators: elements, the hidden-key
// comparator oracle, schedules (static and two-round adaptive), execution,
// and the aggregation of comparator outcomes into a total order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tsort {

/// Zero-based element index in [0, n).
using ElementId = std::uint32_t;

/// Up to t element ids fed to one comparator. Repeats are permitted.
using Assignment = std::vector<ElementId>;

/// All comparator assignments issued in one round.
using Batch = std::vector<Assignment>;

struct ProblemParams {
  std::size_t n = 0;
  std::size_t t = 0;

  /// Throws invalid_input unless 2 <= t <= n.
  void validate() const;
};

/// The assignment's members rearranged into non-decreasing key order.
struct ComparatorOutcome {
  std::vector<ElementId> sorted_ids;

  friend bool operator==(const ComparatorOutcome&, const ComparatorOutcome&) = default;
};

/// Holds the hidden keys (a permutation of [0, n)) and counts every
/// comparator invocation. Keys are only observable through compare().
class KeyOracle {
 public:
  /// Uniformly random key permutation, reproducible for a fixed seed.
  /// width == 0 means "width n".
  static KeyOracle from_seed(std::size_t n, std::uint64_t seed, std::size_t width = 0);

  /// Explicit keys; throws invalid_input unless keys is a bijection on [0, n).
  static KeyOracle from_keys(std::vector<std::uint32_t> keys, std::size_t width = 0);

  std::size_t size() const noexcept { return keys_.size(); }
  std::size_t width() const noexcept { return width_; }
  std::uint64_t comparator_count() const noexcept { return calls_; }

  /// Sorts the members by key (stable for repeated ids) and counts one call.
  /// Throws width_violation if the assignment is longer than width().
  ComparatorOutcome compare(std::span<const ElementId> assignment);

  /// Outcomes in batch order; counts one call per assignment.
  std::vector<ComparatorOutcome> execute_round(std::span<const Assignment> batch);

  /// True iff `order` lists every element exactly once in ascending key order.
  /// Used to certify results; does not count as a comparator call.
  bool is_key_ascending(std::span<const ElementId> order) const;

 private:
  KeyOracle(std::vector<std::uint32_t> keys, std::size_t width);

  std::vector<std::uint32_t> keys_;
  std::size_t width_ = 0;
  std::uint64_t calls_ = 0;
};

struct CostReport {
  std::vector<std::uint64_t> comparators_per_round;

  std::uint64_t total_comparators() const noexcept;
  std::size_t rounds() const noexcept { return comparators_per_round.size(); }

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

/// A static (non-adaptive) plan: every round's batch is fixed up front.
struct Schedule {
  std::size_t n = 0;
  std::size_t width = 0;
  std::vector<Batch> rounds;

  std::size_t comparator_count() const noexcept;

  /// Throws width_violation / invalid_input on an assignment that is too
  /// wide, empty, or names an element outside [0, n).
  void validate() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Two-round adaptive plan: the second batch is computed from the first
/// round's outcomes only.
struct AdaptivePlan {
  Batch first_round;
  std::function<Batch(std::span<const ComparatorOutcome>)> next_round;
};

struct Execution {
  std::vector<std::vector<ComparatorOutcome>> outcomes;  // one entry per round
  CostReport cost;

  /// All outcomes of all rounds, in execution order.
  std::vector<ComparatorOutcome> flattened() const;
};

Execution execute(KeyOracle& oracle, const Schedule& schedule);
Execution execute(KeyOracle& oracle, const AdaptivePlan& plan);

/// R[i] is the rank of element i; out[R[i]] = i.
struct RankTable {
  std::vector<std::uint32_t> rank;
  std::vector<ElementId> out;
};

/// Rank aggregation for exact-once coverage: each outcome adds its position
/// to the rank of the element at that position. Throws not_exact_once if
/// some pair of elements was not compared exactly once (which includes the
/// case where the resulting ranks are not a bijection).
RankTable aggregate_ranks_exact_once(std::size_t n, std::span<const ComparatorOutcome> outcomes);

/// Unique total order implied by the outcomes (transitive closure of all
/// observed relations), or nullopt if some pair's order is undetermined.
std::optional<std::vector<ElementId>> aggregate_general(std::size_t n,
                                                         std::span<const ComparatorOutcome> outcomes);

struct CoverageReport {
  std::uint64_t covered_pairs = 0;
  std::uint32_t min_multiplicity = 0;
  std::uint32_t max_multiplicity = 0;
  bool exact_once = false;
  std::vector<std::pair<ElementId, ElementId>> uncovered;
};

/// Counts, for every unordered pair of distinct elements, the comparators
/// containing both. Repeated ids inside one assignment count once.
CoverageReport validate_pair_coverage(std::size_t n, std::span<const Assignment> batch);

/// Exact non-negative rational in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const noexcept { return den == 1; }

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

/// Exact comparisons between a count and a rational multiple.
bool less_than(std::uint64_t count, Rational bound, std::uint64_t factor = 1);

std::uint64_t binomial2(std::uint64_t n) noexcept;

/// Single-round lower bound C(n,2)/C(t,2). Throws invalid_input for t < 2
/// or t > n.
Rational gamma(std::size_t n, std::size_t t);

}  // namespace tsort
