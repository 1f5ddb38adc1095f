#pragma once

// Beigel-Gill style recursive t-quicksort, instrumented with round and
// comparator counts. Each oversized subset samples about t/log t pivots and
// is split by comparators that each hold all pivots plus t - |P| elements;
// subsets of size <= t are finished by one comparator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "tsort/core.hpp"
#include "tsort/randomized.hpp"

namespace tsort {

enum class LogBase { two, e };

enum class RoundPolicy {
  /// Level d splits run in round d; a terminal sort of a subset formed at
  /// level d runs in round d + 1.
  level_per_round,
  /// Terminal sorts are charged to the round that formed their subset.
  terminal_sorts_free,
};

const char* to_string(LogBase b) noexcept;
const char* to_string(RoundPolicy p) noexcept;
std::optional<LogBase> parse_log_base(std::string_view name) noexcept;
std::optional<RoundPolicy> parse_round_policy(std::string_view name) noexcept;

struct BaselineOptions {
  LogBase log_base = LogBase::two;
  RoundPolicy policy = RoundPolicy::level_per_round;
};

/// max(1, floor(t / log t)), capped at t - 1 so every group holds an element.
std::size_t baseline_pivot_count(std::size_t t, LogBase base = LogBase::two);

/// Always returns the key-ascending order. Throws invalid_input if the
/// oracle width is below 3 or n == 0.
SortResult beigel_gill_sort(KeyOracle& oracle, std::uint64_t seed, const BaselineOptions& options = {});

}  // namespace tsort
