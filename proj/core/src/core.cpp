#include "tsort/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "tsort/error.hpp"
#include "tsort/rng.hpp"

namespace tsort {

namespace {

// Index of the unordered pair {a, b}, a < b, in a packed upper triangle.
std::size_t pair_index(std::size_t n, std::size_t a, std::size_t b) {
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

void check_ids(std::size_t n, std::span<const ElementId> ids) {
  for (ElementId id : ids) {
    if (id >= n) {
      throw Error(ErrorCode::invalid_input,
                  "element " + std::to_string(id) + " outside [0, " + std::to_string(n) + ")");
    }
  }
}

}  // namespace

void ProblemParams::validate() const {
  if (t < 2 || t > n) {
    throw Error(ErrorCode::invalid_input,
                "need 2 <= t <= n, got n=" + std::to_string(n) + " t=" + std::to_string(t));
  }
}

KeyOracle::KeyOracle(std::vector<std::uint32_t> keys, std::size_t width)
    : keys_(std::move(keys)), width_(width == 0 ? keys_.size() : width) {}

KeyOracle KeyOracle::from_seed(std::size_t n, std::uint64_t seed, std::size_t width) {
  if (n == 0) throw Error(ErrorCode::invalid_input, "oracle needs n >= 1");
  std::vector<std::uint32_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0u);
  Rng rng(seed);
  rng.shuffle(std::span(keys));
  return KeyOracle(std::move(keys), width);
}

KeyOracle KeyOracle::from_keys(std::vector<std::uint32_t> keys, std::size_t width) {
  if (keys.empty()) throw Error(ErrorCode::invalid_input, "oracle needs n >= 1");
  std::vector<bool> seen(keys.size(), false);
  for (auto k : keys) {
    if (k >= keys.size() || seen[k]) {
      throw Error(ErrorCode::invalid_input, "keys are not a permutation of [0, n)");
    }
    seen[k] = true;
  }
  return KeyOracle(std::move(keys), width);
}

ComparatorOutcome KeyOracle::compare(std::span<const ElementId> assignment) {
  if (assignment.empty()) throw Error(ErrorCode::invalid_input, "empty comparator assignment");
  if (assignment.size() > width_) {
    throw Error(ErrorCode::width_violation, "assignment of " + std::to_string(assignment.size()) +
                                                " elements exceeds width " + std::to_string(width_));
  }
  check_ids(keys_.size(), assignment);
  ComparatorOutcome out{{assignment.begin(), assignment.end()}};
  std::stable_sort(out.sorted_ids.begin(), out.sorted_ids.end(),
                   [this](ElementId a, ElementId b) { return keys_[a] < keys_[b]; });
  ++calls_;
  return out;
}

std::vector<ComparatorOutcome> KeyOracle::execute_round(std::span<const Assignment> batch) {
  std::vector<ComparatorOutcome> outcomes;
  outcomes.reserve(batch.size());
  for (const auto& a : batch) outcomes.push_back(compare(a));
  return outcomes;
}

bool KeyOracle::is_key_ascending(std::span<const ElementId> order) const {
  if (order.size() != keys_.size()) return false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= keys_.size() || keys_[order[i]] != i) return false;
  }
  return true;
}

std::uint64_t CostReport::total_comparators() const noexcept {
  return std::accumulate(comparators_per_round.begin(), comparators_per_round.end(), std::uint64_t{0});
}

std::size_t Schedule::comparator_count() const noexcept {
  std::size_t total = 0;
  for (const auto& r : rounds) total += r.size();
  return total;
}

void Schedule::validate() const {
  for (const auto& round : rounds) {
    for (const auto& a : round) {
      if (a.empty()) throw Error(ErrorCode::invalid_input, "empty comparator assignment");
      if (a.size() > width) {
        throw Error(ErrorCode::width_violation, "assignment of " + std::to_string(a.size()) +
                                                    " elements exceeds width " + std::to_string(width));
      }
      check_ids(n, a);
    }
  }
}

std::vector<ComparatorOutcome> Execution::flattened() const {
  std::vector<ComparatorOutcome> all;
  for (const auto& r : outcomes) all.insert(all.end(), r.begin(), r.end());
  return all;
}

Execution execute(KeyOracle& oracle, const Schedule& schedule) {
  Execution ex;
  for (const auto& batch : schedule.rounds) {
    ex.outcomes.push_back(oracle.execute_round(batch));
    ex.cost.comparators_per_round.push_back(batch.size());
  }
  return ex;
}

Execution execute(KeyOracle& oracle, const AdaptivePlan& plan) {
  Execution ex;
  ex.outcomes.push_back(oracle.execute_round(plan.first_round));
  ex.cost.comparators_per_round.push_back(plan.first_round.size());
  Batch second = plan.next_round ? plan.next_round(ex.outcomes.front()) : Batch{};
  ex.outcomes.push_back(oracle.execute_round(second));
  ex.cost.comparators_per_round.push_back(second.size());
  return ex;
}

RankTable aggregate_ranks_exact_once(std::size_t n, std::span<const ComparatorOutcome> outcomes) {
  RankTable table;
  table.rank.assign(n, 0);
  table.out.assign(n, 0);
  std::vector<std::uint8_t> compared(binomial2(n), 0);
  std::uint64_t pairs_seen = 0;

  for (const auto& outcome : outcomes) {
    const auto& ids = outcome.sorted_ids;
    check_ids(n, ids);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      for (std::size_t j = k + 1; j < ids.size(); ++j) {
        if (ids[k] == ids[j]) {
          throw Error(ErrorCode::not_exact_once, "repeated element inside one comparator");
        }
        auto& slot = compared[pair_index(n, std::min(ids[k], ids[j]), std::max(ids[k], ids[j]))];
        if (slot) {
          throw Error(ErrorCode::not_exact_once, "pair (" + std::to_string(ids[k]) + ", " +
                                                     std::to_string(ids[j]) + ") compared twice");
        }
        slot = 1;
        ++pairs_seen;
      }
      table.rank[ids[k]] += static_cast<std::uint32_t>(k);
    }
  }
  if (pairs_seen != binomial2(n)) {
    throw Error(ErrorCode::not_exact_once, "some pairs were never compared");
  }

  std::vector<bool> filled(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = table.rank[i];
    if (r >= n || filled[r]) throw Error(ErrorCode::not_exact_once, "ranks are not a bijection");
    filled[r] = true;
    table.out[r] = static_cast<ElementId>(i);
  }
  return table;
}

std::optional<std::vector<ElementId>> aggregate_general(std::size_t n,
                                                         std::span<const ComparatorOutcome> outcomes) {
  // Every outcome is a chain, so its adjacent relations generate all of its
  // pairwise relations under transitivity. The closure is a total order iff
  // the topological order of this DAG is unique.
  std::vector<std::vector<ElementId>> succ(n);
  std::vector<std::uint32_t> indegree(n, 0);
  for (const auto& outcome : outcomes) {
    const auto& ids = outcome.sorted_ids;
    check_ids(n, ids);
    for (std::size_t k = 1; k < ids.size(); ++k) {
      if (ids[k - 1] == ids[k]) continue;
      succ[ids[k - 1]].push_back(ids[k]);
      ++indegree[ids[k]];
    }
  }

  std::vector<ElementId> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(static_cast<ElementId>(i));
  }
  std::vector<ElementId> order;
  order.reserve(n);
  while (!ready.empty()) {
    if (ready.size() > 1) return std::nullopt;
    const ElementId v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (ElementId w : succ[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (order.size() != n) return std::nullopt;  // inconsistent outcomes (cycle)
  return order;
}

CoverageReport validate_pair_coverage(std::size_t n, std::span<const Assignment> batch) {
  constexpr auto cap = std::numeric_limits<std::uint16_t>::max();
  std::vector<std::uint16_t> multiplicity(binomial2(n), 0);
  std::vector<ElementId> ids;
  for (const auto& a : batch) {
    check_ids(n, a);
    ids.assign(a.begin(), a.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        auto& m = multiplicity[pair_index(n, ids[i], ids[j])];
        if (m < cap) ++m;
      }
    }
  }

  CoverageReport report;
  report.min_multiplicity = n < 2 ? 0 : cap;
  report.exact_once = true;
  std::size_t idx = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b, ++idx) {
      const auto m = multiplicity[idx];
      report.min_multiplicity = std::min<std::uint32_t>(report.min_multiplicity, m);
      report.max_multiplicity = std::max<std::uint32_t>(report.max_multiplicity, m);
      if (m > 0) ++report.covered_pairs;
      else report.uncovered.emplace_back(static_cast<ElementId>(a), static_cast<ElementId>(b));
      if (m != 1) report.exact_once = false;
    }
  }
  return report;
}

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::division_by_zero, "rational with zero denominator");
  const auto g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

bool less_than(std::uint64_t count, Rational bound, std::uint64_t factor) {
  __extension__ using wide = unsigned __int128;
  return static_cast<wide>(count) * bound.den < static_cast<wide>(factor) * bound.num;
}

std::uint64_t binomial2(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

Rational gamma(std::size_t n, std::size_t t) {
  ProblemParams{n, t}.validate();
  return make_rational(binomial2(n), binomial2(t));
}

}  // namespace tsort
