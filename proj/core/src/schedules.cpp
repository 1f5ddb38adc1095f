#include "tsort/schedules.hpp"

#include <algorithm>
#include <numeric>

#include "tsort/error.hpp"
#include "tsort/gf.hpp"

namespace tsort {

namespace {

// Verifying a design keeps one byte per pair, so designs are capped at 2^14
// points (about 134 MB of counters).
constexpr std::size_t kMaxDesignPoints = std::size_t{1} << 14;

void require_width(std::size_t t) {
  if (t < 2) throw Error(ErrorCode::invalid_input, "comparator width must be >= 2");
}

std::vector<Assignment> make_groups(std::size_t n, std::size_t group) {
  std::vector<Assignment> groups;
  for (std::size_t start = 0; start < n; start += group) {
    Assignment g(std::min(group, n - start));
    std::iota(g.begin(), g.end(), static_cast<ElementId>(start));
    groups.push_back(std::move(g));
  }
  return groups;
}

Assignment join(const Assignment& a, const Assignment& b) {
  Assignment u = a;
  u.insert(u.end(), b.begin(), b.end());
  return u;
}

Batch plain_partition(std::size_t n, std::size_t group) {
  const auto groups = make_groups(n, group);
  Batch batch;
  batch.reserve(binomial2(groups.size()));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) batch.push_back(join(groups[i], groups[j]));
  }
  return batch;
}

// Odd t, groups of (t+1)/2. A union of two full groups is one element too
// wide, so one side (the split side) contributes all but its last element
// to one comparator and its last element alone to a second one; the other
// side appears whole in both. Orientation follows a balanced round robin so
// every group appears whole at least once when there are >= 3 groups.
Batch split_partition(std::size_t n, std::size_t t) {
  const auto groups = make_groups(n, (t + 1) / 2);
  const std::size_t s = groups.size();
  std::vector<bool> whole(s, false);
  Batch batch;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      if (groups[i].size() + groups[j].size() <= t) {
        batch.push_back(join(groups[i], groups[j]));
        whole[i] = whole[j] = true;
        continue;
      }
      const bool i_whole = (j - i) <= s / 2;
      const auto& keep = i_whole ? groups[i] : groups[j];
      const auto& split = i_whole ? groups[j] : groups[i];
      whole[i_whole ? i : j] = true;
      Assignment head(split.begin(), split.end() - 1);
      batch.push_back(join(head, keep));
      batch.push_back(join(Assignment{split.back()}, keep));
    }
  }
  for (std::size_t g = 0; g < s; ++g) {
    if (!whole[g] && groups[g].size() > 1) batch.push_back(groups[g]);
  }
  return batch;
}

bool is_prime_power(std::size_t v) { return as_prime_power(v).has_value(); }

}  // namespace

const char* to_string(Construction c) noexcept {
  switch (c) {
    case Construction::trivial: return "trivial";
    case Construction::three_comparator: return "three-comparator";
    case Construction::minimal_design: return "minimal-design";
    case Construction::composed: return "composed";
    case Construction::partition: return "partition";
  }
  return "unknown";
}

std::optional<Construction> parse_construction(std::string_view name) noexcept {
  for (auto c : {Construction::trivial, Construction::three_comparator, Construction::minimal_design,
                 Construction::composed, Construction::partition}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

Schedule trivial_schedule(std::size_t n, std::size_t t) {
  require_width(t);
  if (n == 0 || n > t) {
    throw Error(ErrorCode::inapplicable, "a single comparator needs 1 <= n <= t");
  }
  Assignment all(n);
  std::iota(all.begin(), all.end(), ElementId{0});
  return Schedule{n, t, {Batch{std::move(all)}}};
}

Schedule partition_schedule(std::size_t n, std::size_t t) {
  require_width(t);
  if (n == 0) throw Error(ErrorCode::invalid_input, "need n >= 1");
  if (n <= t) return trivial_schedule(n, t);
  Batch batch = plain_partition(n, t / 2);
  if (t % 2 == 1) {
    Batch alt = split_partition(n, t);
    if (alt.size() < batch.size()) batch = std::move(alt);
  }
  return Schedule{n, t, {std::move(batch)}};
}

Schedule three_comparator_schedule(std::size_t n, std::size_t t) {
  require_width(t);
  if (t >= n || 3 * t < 2 * n) {
    throw Error(ErrorCode::inapplicable, "three comparators need ceil(2n/3) <= t < n (n=" +
                                             std::to_string(n) + ", t=" + std::to_string(t) + ")");
  }
  const std::size_t half = (t + 1) / 2;
  Assignment first(t), tail;
  std::iota(first.begin(), first.end(), ElementId{0});
  for (std::size_t i = n; i-- > t;) tail.push_back(static_cast<ElementId>(i));
  Assignment second = tail, third = tail;
  for (std::size_t i = 0; i < half; ++i) second.push_back(static_cast<ElementId>(i));
  for (std::size_t i = half; i < t; ++i) third.push_back(static_cast<ElementId>(i));
  return Schedule{n, t, {Batch{std::move(first), std::move(second), std::move(third)}}};
}

std::optional<std::size_t> composition_depth(std::size_t n, std::size_t t) {
  if (t < 2) return std::nullopt;
  std::size_t power = t;  // t^(2^k) after k squarings
  for (std::size_t k = 1;; ++k) {
    if (power > n / power) return std::nullopt;
    power *= power;
    if (power == n) return k;
  }
}

Design compose_design(std::size_t t, std::size_t k) {
  if (k == 0 || !is_prime_power(t)) {
    throw Error(ErrorCode::inapplicable, "composition needs a prime power t and k >= 1");
  }
  std::size_t outer_order = t;  // t^(2^(k-1))
  for (std::size_t i = 1; i < k; ++i) {
    if (outer_order * outer_order > kMaxDesignPoints) {
      throw Error(ErrorCode::unsupported_size, "composed design exceeds 2^14 points");
    }
    outer_order *= outer_order;
  }
  if (outer_order * outer_order > kMaxDesignPoints) {
    throw Error(ErrorCode::unsupported_size, "composed design exceeds 2^14 points");
  }
  if (k == 1) return affine_plane(t);

  const Design inner = compose_design(t, k - 1);
  const Design outer = affine_plane(outer_order);
  Design d{outer.n_points, t, {}};
  d.lines.reserve(outer.lines.size() * inner.lines.size());
  for (const auto& big_line : outer.lines) {
    for (const auto& small_line : inner.lines) {
      std::vector<ElementId> line;
      line.reserve(small_line.size());
      for (ElementId p : small_line) line.push_back(big_line[p]);
      d.lines.push_back(std::move(line));
    }
  }
  if (!verify_steiner2(d).ok) {
    throw Error(ErrorCode::protocol_violation, "composed design failed Steiner verification");
  }
  return d;
}

Schedule compose(std::size_t t, std::size_t k) { return design_to_schedule(compose_design(t, k)); }

ConstructedSchedule construct(std::size_t n, std::size_t t, Construction method) {
  require_width(t);
  auto cert = [&](std::string s) {
    return "n=" + std::to_string(n) + " t=" + std::to_string(t) + " " + std::move(s);
  };
  switch (method) {
    case Construction::trivial:
      return {trivial_schedule(n, t), {method, cert("n <= t")}};
    case Construction::minimal_design:
      if (n == t * t && is_prime_power(t)) {
        return {design_to_schedule(affine_plane(t)), {method, cert("affine plane of order " + std::to_string(t))}};
      }
      if (t >= 3 && n == t * t - t + 1 && is_prime_power(t - 1)) {
        return {design_to_schedule(projective_plane(t - 1)),
                {method, cert("projective plane of order " + std::to_string(t - 1))}};
      }
      throw Error(ErrorCode::inapplicable, cert("no affine or projective plane applies"));
    case Construction::composed: {
      const auto k = composition_depth(n, t);
      if (!k || !is_prime_power(t)) {
        throw Error(ErrorCode::inapplicable, cert("n is not t^(2^k) with t a prime power"));
      }
      return {compose(t, *k), {method, cert("k=" + std::to_string(*k))}};
    }
    case Construction::three_comparator:
      return {three_comparator_schedule(n, t), {method, cert("ceil(2n/3) <= t < n")}};
    case Construction::partition:
      return {partition_schedule(n, t), {method, cert("groups of about t/2")}};
  }
  throw Error(ErrorCode::invalid_input, "unknown construction");
}

ConstructedSchedule minimal_schedule(std::size_t n, std::size_t t) {
  require_width(t);
  if (n == 0) throw Error(ErrorCode::invalid_input, "need n >= 1");
  if (n <= t) return construct(n, t, Construction::trivial);
  if (n <= kMaxDesignPoints) {
    const bool plane = (n == t * t && is_prime_power(t)) ||
                       (n == t * t - t + 1 && is_prime_power(t - 1));
    if (plane) return construct(n, t, Construction::minimal_design);
    if (is_prime_power(t) && composition_depth(n, t)) return construct(n, t, Construction::composed);
  }
  if (3 * t >= 2 * n) return construct(n, t, Construction::three_comparator);
  return construct(n, t, Construction::partition);
}

Batch remap(std::span<const Assignment> batch, std::span<const ElementId> ids) {
  Batch out;
  out.reserve(batch.size());
  for (const auto& a : batch) {
    Assignment m;
    m.reserve(a.size());
    for (ElementId local : a) {
      if (local >= ids.size()) throw Error(ErrorCode::invalid_input, "local index out of range");
      m.push_back(ids[local]);
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace tsort
