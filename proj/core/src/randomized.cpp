#include "tsort/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "tsort/error.hpp"
#include "tsort/schedules.hpp"

namespace tsort {

namespace {

// Pivot draws use their own stream so they are independent of the key
// permutation an oracle built from the same seed would hold.
constexpr std::uint64_t kPivotStream = 1;

enum class Relation : std::uint8_t { unknown = 0, below = 1, above = 2 };

std::vector<ElementId> non_pivots(std::size_t n, std::span<const ElementId> pivots) {
  std::vector<bool> is_pivot(n, false);
  for (ElementId p : pivots) is_pivot[p] = true;
  std::vector<ElementId> rest;
  rest.reserve(n - pivots.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_pivot[i]) rest.push_back(static_cast<ElementId>(i));
  }
  return rest;
}

std::vector<std::vector<ElementId>> chunk(const std::vector<ElementId>& ids, std::size_t size) {
  std::vector<std::vector<ElementId>> groups;
  for (std::size_t start = 0; start < ids.size(); start += size) {
    const auto end = std::min(ids.size(), start + size);
    groups.emplace_back(ids.begin() + static_cast<std::ptrdiff_t>(start),
                        ids.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return groups;
}

std::vector<ElementId> with_pivots(std::span<const ElementId> pivots, const std::vector<ElementId>& group) {
  std::vector<ElementId> ids(pivots.begin(), pivots.end());
  ids.insert(ids.end(), group.begin(), group.end());
  return ids;
}

// Round 1 is fixed before execution; round 2 sorts every bucket with the
// cheapest single-round schedule for its size. The final order interleaves
// the sorted buckets with the sorted pivots.
TwoRoundResult run_two_round(KeyOracle& oracle, std::vector<ElementId> pivots, Batch round1) {
  const std::size_t n = oracle.size();
  const std::size_t t = oracle.width();

  Bucketing bucketing;
  std::vector<std::pair<std::size_t, std::size_t>> slices;
  AdaptivePlan plan;
  plan.first_round = std::move(round1);
  plan.next_round = [&](std::span<const ComparatorOutcome> outcomes) {
    bucketing = bucketize(n, pivots, outcomes);
    std::map<std::size_t, Batch> cache;
    Batch batch;
    for (const auto& bucket : bucketing.buckets) {
      const std::size_t begin = batch.size();
      const std::size_t size = bucket.members.size();
      if (size >= 2) {
        auto it = cache.find(size);
        if (it == cache.end()) {
          it = cache.emplace(size, minimal_schedule(size, t).schedule.rounds.front()).first;
        }
        for (auto& a : remap(it->second, bucket.members)) batch.push_back(std::move(a));
      }
      slices.emplace_back(begin, batch.size());
    }
    return batch;
  };
  const Execution ex = execute(oracle, plan);
  const auto& round2 = ex.outcomes.at(1);

  TwoRoundResult result;
  result.cost = ex.cost;
  result.pivot_count = pivots.size();
  result.order.reserve(n);
  std::vector<ElementId> local(n, 0);
  std::vector<ComparatorOutcome> local_outcomes;
  for (std::size_t b = 0; b < bucketing.buckets.size(); ++b) {
    const auto& members = bucketing.buckets[b].members;
    result.bucket_sizes.push_back(members.size());
    if (members.size() <= 1) {
      result.order.insert(result.order.end(), members.begin(), members.end());
    } else {
      for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<ElementId>(i);
      local_outcomes.clear();
      for (std::size_t k = slices[b].first; k < slices[b].second; ++k) {
        ComparatorOutcome o;
        for (ElementId id : round2[k].sorted_ids) o.sorted_ids.push_back(local[id]);
        local_outcomes.push_back(std::move(o));
      }
      const auto sorted = aggregate_general(members.size(), local_outcomes);
      if (!sorted) throw Error(ErrorCode::protocol_violation, "round 2 left a bucket unsorted");
      for (ElementId i : *sorted) result.order.push_back(members[i]);
    }
    if (b < bucketing.sorted_pivots.size()) result.order.push_back(bucketing.sorted_pivots[b]);
  }
  return result;
}

void require_sortable(const KeyOracle& oracle) {
  if (oracle.width() < 2) throw Error(ErrorCode::invalid_input, "comparator width must be >= 2");
  if (oracle.size() == 0) throw Error(ErrorCode::invalid_input, "need n >= 1");
}

double quantile(const std::vector<std::size_t>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
  return static_cast<double>(sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1]);
}

}  // namespace

const char* to_string(TwoRoundAlgorithm a) noexcept {
  switch (a) {
    case TwoRoundAlgorithm::square: return "square";
    case TwoRoundAlgorithm::general: return "general";
    case TwoRoundAlgorithm::large_t: return "large-t";
    case TwoRoundAlgorithm::automatic: return "auto";
  }
  return "unknown";
}

std::optional<TwoRoundAlgorithm> parse_two_round_algorithm(std::string_view name) noexcept {
  for (auto a : {TwoRoundAlgorithm::square, TwoRoundAlgorithm::general, TwoRoundAlgorithm::large_t,
                 TwoRoundAlgorithm::automatic}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

std::size_t ceil_sqrt(std::size_t n) noexcept {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while (r * r < n) ++r;
  return r;
}

std::vector<ElementId> sample_pivots(std::size_t n, std::size_t count, Rng& rng, PivotSampling mode) {
  if (count > n) throw Error(ErrorCode::invalid_input, "more pivots than elements");
  std::vector<bool> taken(n, false);
  std::vector<ElementId> pivots;
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = static_cast<ElementId>(rng.below(n));
    if (!taken[p]) {
      taken[p] = true;
      pivots.push_back(p);
    }
  }
  if (mode == PivotSampling::without_replacement) {
    while (pivots.size() < count) {
      const auto p = static_cast<ElementId>(rng.below(n));
      if (!taken[p]) {
        taken[p] = true;
        pivots.push_back(p);
      }
    }
  }
  return pivots;
}

Bucketing bucketize(std::size_t n, std::span<const ElementId> pivots,
                    std::span<const ComparatorOutcome> round1) {
  const std::size_t m = pivots.size();
  std::vector<std::int64_t> slot(n, -1);
  for (std::size_t s = 0; s < m; ++s) {
    if (pivots[s] >= n) throw Error(ErrorCode::invalid_input, "pivot id out of range");
    if (slot[pivots[s]] >= 0) throw Error(ErrorCode::invalid_input, "repeated pivot");
    slot[pivots[s]] = static_cast<std::int64_t>(s);
  }

  std::vector<Relation> rel(n * m, Relation::unknown);
  std::vector<std::pair<std::size_t, std::size_t>> seen;  // (pivot slot, position)
  for (const auto& outcome : round1) {
    const auto& ids = outcome.sorted_ids;
    seen.clear();
    for (std::size_t pos = 0; pos < ids.size(); ++pos) {
      if (ids[pos] >= n) throw Error(ErrorCode::invalid_input, "element id out of range");
      if (slot[ids[pos]] >= 0) seen.emplace_back(static_cast<std::size_t>(slot[ids[pos]]), pos);
    }
    for (std::size_t pos = 0; pos < ids.size(); ++pos) {
      for (const auto& [s, ppos] : seen) {
        if (pivots[s] == ids[pos]) continue;
        const Relation r = pos < ppos ? Relation::below : Relation::above;
        auto& cell = rel[std::size_t{ids[pos]} * m + s];
        if (cell != Relation::unknown && cell != r) {
          throw Error(ErrorCode::protocol_violation, "inconsistent comparator outcomes");
        }
        cell = r;
      }
    }
  }

  Bucketing out;
  out.buckets.resize(m + 1);
  for (std::size_t b = 0; b <= m; ++b) out.buckets[b].index = b;
  out.sorted_pivots.assign(m, 0);
  for (std::size_t e = 0; e < n; ++e) {
    std::size_t above = 0;
    for (std::size_t s = 0; s < m; ++s) {
      if (pivots[s] == e) continue;
      const Relation r = rel[e * m + s];
      if (r == Relation::unknown) {
        throw Error(ErrorCode::protocol_violation,
                    "element " + std::to_string(e) + " was never compared with pivot " +
                        std::to_string(pivots[s]));
      }
      if (r == Relation::above) ++above;
    }
    if (slot[e] >= 0) {
      out.sorted_pivots[above] = static_cast<ElementId>(e);
    } else {
      out.buckets[above].members.push_back(static_cast<ElementId>(e));
    }
  }
  return out;
}

TwoRoundResult two_round_sort_square(KeyOracle& oracle, std::uint64_t seed, const TwoRoundOptions& options) {
  require_sortable(oracle);
  const std::size_t n = oracle.size();
  const std::size_t t = oracle.width();
  if (t % 2 != 0 || n != t * t) {
    throw Error(ErrorCode::inapplicable, "square algorithm needs n = t^2 with t even (n=" + std::to_string(n) +
                                             ", t=" + std::to_string(t) + ")");
  }
  Rng rng(derive_seed(seed, kPivotStream));
  auto pivots = sample_pivots(n, t / 2, rng, options.sampling);
  Batch round1;
  for (const auto& group : chunk(non_pivots(n, pivots), t / 2)) round1.push_back(with_pivots(pivots, group));
  return run_two_round(oracle, std::move(pivots), std::move(round1));
}

TwoRoundResult two_round_sort_general(KeyOracle& oracle, std::uint64_t seed, const TwoRoundOptions& options) {
  require_sortable(oracle);
  const std::size_t n = oracle.size();
  const std::size_t t = oracle.width();
  const std::size_t m = ceil_sqrt(n);
  if (t > m) {
    throw Error(ErrorCode::inapplicable, "general algorithm needs t <= ceil(sqrt(n)) (n=" + std::to_string(n) +
                                             ", t=" + std::to_string(t) + ")");
  }
  Rng rng(derive_seed(seed, kPivotStream));
  auto pivots = sample_pivots(n, m, rng, options.sampling);
  std::map<std::size_t, Batch> cache;
  Batch round1;
  for (const auto& group : chunk(non_pivots(n, pivots), m)) {
    const auto ids = with_pivots(pivots, group);
    auto it = cache.find(ids.size());
    if (it == cache.end()) {
      it = cache.emplace(ids.size(), partition_schedule(ids.size(), t).rounds.front()).first;
    }
    for (auto& a : remap(it->second, ids)) round1.push_back(std::move(a));
  }
  return run_two_round(oracle, std::move(pivots), std::move(round1));
}

TwoRoundResult two_round_sort_large_t(KeyOracle& oracle, std::uint64_t seed, const TwoRoundOptions& options) {
  require_sortable(oracle);
  const std::size_t n = oracle.size();
  const std::size_t t = oracle.width();
  if (t <= ceil_sqrt(n) || t >= n) {
    throw Error(ErrorCode::inapplicable, "large-t algorithm needs ceil(sqrt(n)) < t < n (n=" +
                                             std::to_string(n) + ", t=" + std::to_string(t) + ")");
  }
  Rng rng(derive_seed(seed, kPivotStream));
  auto pivots = sample_pivots(n, (n + t - 1) / t, rng, options.sampling);
  std::map<std::size_t, Batch> cache;
  Batch round1;
  for (const auto& group : chunk(non_pivots(n, pivots), t)) {
    const auto ids = with_pivots(pivots, group);
    auto it = cache.find(ids.size());
    if (it == cache.end()) {
      it = cache.emplace(ids.size(), minimal_schedule(ids.size(), t).schedule.rounds.front()).first;
    }
    for (auto& a : remap(it->second, ids)) round1.push_back(std::move(a));
  }
  return run_two_round(oracle, std::move(pivots), std::move(round1));
}

TwoRoundResult two_round_sort(KeyOracle& oracle, TwoRoundAlgorithm algorithm, std::uint64_t seed,
                              const TwoRoundOptions& options) {
  switch (algorithm) {
    case TwoRoundAlgorithm::square: return two_round_sort_square(oracle, seed, options);
    case TwoRoundAlgorithm::general: return two_round_sort_general(oracle, seed, options);
    case TwoRoundAlgorithm::large_t: return two_round_sort_large_t(oracle, seed, options);
    case TwoRoundAlgorithm::automatic: break;
  }
  require_sortable(oracle);
  const std::size_t n = oracle.size();
  const std::size_t t = oracle.width();
  if (n <= t) {
    const Execution ex = execute(oracle, trivial_schedule(n, t));
    TwoRoundResult r;
    r.order = ex.outcomes.front().front().sorted_ids;
    r.cost = ex.cost;
    return r;
  }
  if (t <= ceil_sqrt(n)) return two_round_sort_general(oracle, seed, options);
  return two_round_sort_large_t(oracle, seed, options);
}

double BucketStats::fraction_above(double size) const noexcept {
  if (sizes.empty()) return 0.0;
  const auto it = std::upper_bound(sizes.begin(), sizes.end(), size,
                                   [](double v, std::size_t s) { return v < static_cast<double>(s); });
  return static_cast<double>(sizes.end() - it) / static_cast<double>(sizes.size());
}

BucketStats bucket_size_stats(std::size_t n, std::size_t t, std::size_t trials, std::uint64_t seed,
                              const BucketStatsOptions& options) {
  if (trials == 0) throw Error(ErrorCode::invalid_input, "need at least one trial");
  if (n == 0 || t < 2) throw Error(ErrorCode::invalid_input, "need n >= 1 and t >= 2");
  std::size_t m = options.pivot_count;
  if (m == 0) m = t <= ceil_sqrt(n) ? ceil_sqrt(n) : (n + t - 1) / t;
  m = std::min(m, n);

  BucketStats st;
  st.trials = trials;
  st.pivots_requested = m;
  // Pivot ids double as key ranks: a uniform element has a uniform rank.
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    auto pivots = sample_pivots(n, m, rng, options.sampling);
    std::sort(pivots.begin(), pivots.end());
    std::size_t prev = 0;
    for (ElementId p : pivots) {
      st.sizes.push_back(p - prev);
      prev = std::size_t{p} + 1;
    }
    st.sizes.push_back(n - prev);
  }
  std::sort(st.sizes.begin(), st.sizes.end());
  st.max = st.sizes.back();
  st.mean = static_cast<double>(std::accumulate(st.sizes.begin(), st.sizes.end(), std::uint64_t{0})) /
            static_cast<double>(st.sizes.size());
  st.p50 = quantile(st.sizes, 0.50);
  st.p90 = quantile(st.sizes, 0.90);
  st.p99 = quantile(st.sizes, 0.99);
  st.reference_size = static_cast<double>(n) / static_cast<double>(m);
  st.large_threshold = st.reference_size > 1.0 ? st.reference_size * std::log2(st.reference_size) : 0.0;
  st.fraction_large = st.fraction_above(st.large_threshold);
  return st;
}

}  // namespace tsort
