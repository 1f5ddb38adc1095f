#pragma once

// Single-round schedule constructors and the dispatcher that picks the
// cheapest one applicable to (n, t).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tsort/core.hpp"
#include "tsort/designs.hpp"

namespace tsort {

enum class Construction { trivial, three_comparator, minimal_design, composed, partition };

const char* to_string(Construction c) noexcept;
std::optional<Construction> parse_construction(std::string_view name) noexcept;

struct ConstructionChoice {
  Construction tag = Construction::partition;
  std::string certificate;  // human-readable parameters proving applicability
};

struct ConstructedSchedule {
  Schedule schedule;
  ConstructionChoice choice;
};

/// One comparator over all n <= t elements.
Schedule trivial_schedule(std::size_t n, std::size_t t);

/// Groups of floor(t/2) elements, one comparator per pair of groups on their
/// union. For odd t the split-pair variant (groups of ceil(t/2), each
/// over-wide union covered by two comparators) is used instead whenever it
/// is cheaper. n <= t degenerates to a single comparator.
Schedule partition_schedule(std::size_t n, std::size_t t);

/// Exactly three comparators; requires t < n <= floor(3t/2). Throws
/// inapplicable otherwise.
Schedule three_comparator_schedule(std::size_t n, std::size_t t);

/// Minimal schedule on n = t^(2^k) points: affine plane of order
/// t^(2^(k-1)) whose lines are each replaced by the recursive schedule.
/// Throws inapplicable unless t is a prime power and k >= 1, unsupported_size
/// when the result would exceed 2^14 points.
Design compose_design(std::size_t t, std::size_t k);
Schedule compose(std::size_t t, std::size_t k);

/// k with n = t^(2^k), k >= 1, if any.
std::optional<std::size_t> composition_depth(std::size_t n, std::size_t t);

/// Dispatcher: trivial, then minimal designs, composition, three comparators,
/// and the partition fallback. Designs are only tried up to 2^14 points.
ConstructedSchedule minimal_schedule(std::size_t n, std::size_t t);

/// Builds the requested construction or throws inapplicable.
ConstructedSchedule construct(std::size_t n, std::size_t t, Construction method);

/// Rewrites local indices [0, ids.size()) to the given element ids.
Batch remap(std::span<const Assignment> batch, std::span<const ElementId> ids);

}  // namespace tsort
