#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "tsort/core.hpp"
#include "tsort/error.hpp"
#include "tsort/rng.hpp"

#define CHECK_ERROR_CODE(expr, expected)                          \
  do {                                                            \
    bool tsort_thrown_ = false;                                   \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const ::tsort::Error& tsort_e_) {                    \
      tsort_thrown_ = true;                                       \
      CHECK_MESSAGE(tsort_e_.code() == (expected), tsort_e_.what()); \
    }                                                             \
    CHECK_MESSAGE(tsort_thrown_, "expected an exception: " #expr); \
  } while (0)

namespace tsort::test {

inline std::vector<std::uint32_t> random_keys(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0u);
  rng.shuffle(std::span<std::uint32_t>(keys));
  return keys;
}

/// Element ids in ascending key order, computed straight from the keys.
inline std::vector<ElementId> order_of(const std::vector<std::uint32_t>& keys) {
  std::vector<ElementId> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) out[keys[i]] = static_cast<ElementId>(i);
  return out;
}

/// Executes a single-round schedule against explicit keys and returns the
/// order found by general aggregation.
inline std::optional<std::vector<ElementId>> sort_with(const Schedule& s, const std::vector<std::uint32_t>& keys) {
  KeyOracle oracle = KeyOracle::from_keys(keys, s.width);
  return aggregate_general(s.n, execute(oracle, s).flattened());
}

}  // namespace tsort::test
