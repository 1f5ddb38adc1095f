#include "tsort/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "tsort/error.hpp"
#include "tsort/rng.hpp"

namespace tsort {

namespace {

constexpr std::uint64_t kPivotStream = 2;

struct Node {
  std::vector<ElementId> members;
  std::size_t offset = 0;  // first slot of this subset in the output order
};

struct Job {
  std::size_t node = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<ElementId> pivots;  // local indices; empty for a terminal sort
};

}  // namespace

const char* to_string(LogBase b) noexcept { return b == LogBase::two ? "2" : "e"; }

const char* to_string(RoundPolicy p) noexcept {
  return p == RoundPolicy::level_per_round ? "level-per-round" : "terminal-sorts-free";
}

std::optional<LogBase> parse_log_base(std::string_view name) noexcept {
  if (name == "2") return LogBase::two;
  if (name == "e") return LogBase::e;
  return std::nullopt;
}

std::optional<RoundPolicy> parse_round_policy(std::string_view name) noexcept {
  if (name == "level-per-round") return RoundPolicy::level_per_round;
  if (name == "terminal-sorts-free") return RoundPolicy::terminal_sorts_free;
  return std::nullopt;
}

std::size_t baseline_pivot_count(std::size_t t, LogBase base) {
  if (t < 3) throw Error(ErrorCode::invalid_input, "baseline needs t >= 3");
  const double lg = base == LogBase::two ? std::log2(static_cast<double>(t)) : std::log(static_cast<double>(t));
  const auto m = static_cast<std::size_t>(std::floor(static_cast<double>(t) / lg));
  return std::clamp<std::size_t>(m, 1, t - 1);
}

SortResult beigel_gill_sort(KeyOracle& oracle, std::uint64_t seed, const BaselineOptions& options) {
  const std::size_t n = oracle.size();
  const std::size_t t = oracle.width();
  if (n == 0) throw Error(ErrorCode::invalid_input, "need n >= 1");
  const std::size_t mp = baseline_pivot_count(t, options.log_base);

  Rng rng(derive_seed(seed, kPivotStream));
  SortResult result;
  result.order.assign(n, 0);
  auto& per_round = result.cost.comparators_per_round;
  auto charge = [&per_round](std::size_t round, std::uint64_t count) {
    if (count == 0) return;
    if (per_round.size() < round) per_round.resize(round, 0);
    per_round[round - 1] += count;
  };

  std::vector<ElementId> local(n, 0);
  std::vector<Node> level{Node{{}, 0}};
  level.front().members.resize(n);
  for (std::size_t i = 0; i < n; ++i) level.front().members[i] = static_cast<ElementId>(i);

  for (std::size_t depth = 1; !level.empty(); ++depth) {
    Batch batch;
    std::vector<Job> jobs;
    std::uint64_t terminal = 0;
    for (std::size_t k = 0; k < level.size(); ++k) {
      const auto& members = level[k].members;
      if (members.size() == 1) result.order[level[k].offset] = members.front();
      if (members.size() <= 1) continue;
      Job job{k, batch.size(), 0, {}};
      if (members.size() <= t) {
        batch.push_back(members);
        ++terminal;
      } else {
        job.pivots = sample_pivots(members.size(), mp, rng, PivotSampling::with_replacement_dedup);
        std::vector<bool> is_pivot(members.size(), false);
        Assignment pivot_ids;
        for (ElementId p : job.pivots) {
          is_pivot[p] = true;
          pivot_ids.push_back(members[p]);
        }
        Assignment current = pivot_ids;
        for (std::size_t i = 0; i < members.size(); ++i) {
          if (is_pivot[i]) continue;
          current.push_back(members[i]);
          if (current.size() == t) {
            batch.push_back(std::move(current));
            current = pivot_ids;
          }
        }
        if (current.size() > pivot_ids.size()) batch.push_back(std::move(current));
      }
      job.end = batch.size();
      jobs.push_back(std::move(job));
    }
    if (batch.empty()) break;

    const auto outcomes = oracle.execute_round(batch);
    const std::size_t terminal_round =
        options.policy == RoundPolicy::terminal_sorts_free && depth > 1 ? depth - 1 : depth;
    charge(terminal_round, terminal);
    charge(depth, batch.size() - terminal);

    std::vector<Node> next;
    for (const auto& job : jobs) {
      const Node& node = level[job.node];
      if (job.pivots.empty()) {
        const auto& sorted = outcomes[job.begin].sorted_ids;
        std::copy(sorted.begin(), sorted.end(), result.order.begin() + static_cast<std::ptrdiff_t>(node.offset));
        continue;
      }
      for (std::size_t i = 0; i < node.members.size(); ++i) local[node.members[i]] = static_cast<ElementId>(i);
      std::vector<ComparatorOutcome> local_outcomes;
      for (std::size_t c = job.begin; c < job.end; ++c) {
        ComparatorOutcome o;
        for (ElementId id : outcomes[c].sorted_ids) o.sorted_ids.push_back(local[id]);
        local_outcomes.push_back(std::move(o));
      }
      const Bucketing split = bucketize(node.members.size(), job.pivots, local_outcomes);
      std::size_t offset = node.offset;
      for (std::size_t b = 0; b < split.buckets.size(); ++b) {
        Node child{{}, offset};
        for (ElementId i : split.buckets[b].members) child.members.push_back(node.members[i]);
        offset += child.members.size();
        if (!child.members.empty()) next.push_back(std::move(child));
        if (b < split.sorted_pivots.size()) result.order[offset++] = node.members[split.sorted_pivots[b]];
      }
    }
    level = std::move(next);
  }
  return result;
}

}  // namespace tsort
