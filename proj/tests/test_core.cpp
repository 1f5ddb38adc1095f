#include <algorithm>

#include "support.hpp"
#include "tsort/designs.hpp"
#include "tsort/schedule_io.hpp"
#include "tsort/schedules.hpp"

using namespace tsort;
using tsort::test::order_of;
using tsort::test::random_keys;

TEST_SUITE("core") {

TEST_CASE("problem params") {
  CHECK_NOTHROW(ProblemParams{4, 2}.validate());
  CHECK_ERROR_CODE(ProblemParams({4, 1}).validate(), ErrorCode::invalid_input);
  CHECK_ERROR_CODE(ProblemParams({3, 4}).validate(), ErrorCode::invalid_input);
}

TEST_CASE("oracle construction") {
  auto single = KeyOracle::from_keys({0});
  CHECK(single.size() == 1);
  CHECK(single.compare(std::vector<ElementId>{0}).sorted_ids == std::vector<ElementId>{0});

  auto a = KeyOracle::from_seed(5, 7);
  auto b = KeyOracle::from_seed(5, 7);
  for (ElementId i = 0; i < 5; ++i) {
    for (ElementId j = 0; j < 5; ++j) {
      const std::vector<ElementId> pair{i, j};
      CHECK(a.compare(pair) == b.compare(pair));
    }
  }
  CHECK(a.comparator_count() == 25);

  CHECK_ERROR_CODE(KeyOracle::from_keys({0, 0, 1}), ErrorCode::invalid_input);
  CHECK_ERROR_CODE(KeyOracle::from_keys({0, 3, 1}), ErrorCode::invalid_input);
}

TEST_CASE("compare") {
  auto two = KeyOracle::from_keys({1, 0});
  CHECK(two.compare(std::vector<ElementId>{0, 1}).sorted_ids == std::vector<ElementId>{1, 0});

  auto o = KeyOracle::from_keys({2, 0, 3, 1});
  CHECK(o.compare(std::vector<ElementId>{0, 1}).sorted_ids == std::vector<ElementId>{1, 0});
  CHECK(o.compare(std::vector<ElementId>{0, 1, 2, 3}).sorted_ids == std::vector<ElementId>{1, 3, 0, 2});
  CHECK(o.compare(std::vector<ElementId>{0, 0, 0}).sorted_ids == std::vector<ElementId>{0, 0, 0});
  CHECK(o.compare(std::vector<ElementId>{2, 1, 2}).sorted_ids == std::vector<ElementId>{1, 2, 2});
  CHECK(o.comparator_count() == 4);

  auto narrow = KeyOracle::from_keys({2, 0, 3, 1}, 2);
  CHECK_ERROR_CODE(narrow.compare(std::vector<ElementId>{0, 1, 2}), ErrorCode::width_violation);
  CHECK_ERROR_CODE(narrow.compare(std::vector<ElementId>{4}), ErrorCode::invalid_input);
}

TEST_CASE("compare output is a key-sorted rearrangement (property)") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(20);
    const auto keys = random_keys(n, rng);
    auto o = KeyOracle::from_keys(keys);
    std::vector<ElementId> a(1 + rng.below(n));
    for (auto& x : a) x = static_cast<ElementId>(rng.below(n));
    const auto out = o.compare(a).sorted_ids;
    auto x = a, y = out;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(x == y);
    CHECK(std::is_sorted(out.begin(), out.end(), [&](ElementId l, ElementId r) { return keys[l] < keys[r]; }));
  }
}

TEST_CASE("execute_round") {
  auto o = KeyOracle::from_seed(6, 3);
  CHECK(o.execute_round(Batch{}).empty());
  CHECK(o.comparator_count() == 0);

  auto out = o.execute_round(Batch{{0, 1, 2, 3, 4, 5}});
  CHECK(o.is_key_ascending(out.front().sorted_ids));

  const auto before = o.comparator_count();
  const auto two = o.execute_round(Batch{{0, 1}, {2, 3}});
  CHECK(two.size() == 2);
  CHECK(o.comparator_count() == before + 2);

  auto narrow = KeyOracle::from_seed(6, 3, 2);
  CHECK_ERROR_CODE(narrow.execute_round(Batch{{0, 1}, {0, 1, 2}}), ErrorCode::width_violation);
}

TEST_CASE("cost report") {
  CostReport c{{3, 0, 4}};
  CHECK(c.total_comparators() == 7);
  CHECK(c.rounds() == 3);
}

TEST_CASE("adaptive execution sees only round-1 outcomes") {
  auto o = KeyOracle::from_keys({3, 1, 0, 2});
  AdaptivePlan plan;
  plan.first_round = Batch{{0, 1}, {2, 3}};
  std::size_t seen = 0;
  plan.next_round = [&](std::span<const ComparatorOutcome> r1) {
    seen = r1.size();
    return Batch{{r1[0].sorted_ids.back(), r1[1].sorted_ids.back()}};
  };
  const auto ex = execute(o, plan);
  CHECK(seen == 2);
  CHECK(ex.cost == CostReport{{2, 1}});
  CHECK(ex.outcomes[1][0].sorted_ids == std::vector<ElementId>{3, 0});
}

TEST_CASE("rank aggregation") {
  auto o = KeyOracle::from_keys({2, 0, 3, 1});
  const auto one = o.execute_round(Batch{{0, 1, 2, 3}});
  CHECK(aggregate_ranks_exact_once(4, one).out == one.front().sorted_ids);

  Rng rng(5);
  const Schedule plane = design_to_schedule(affine_plane(3));
  CHECK(plane.rounds.front().size() == 12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto keys = random_keys(9, rng);
    auto oracle = KeyOracle::from_keys(keys);
    const auto outcomes = execute(oracle, plane).flattened();
    const auto table = aggregate_ranks_exact_once(9, outcomes);
    CHECK(table.out == order_of(keys));
    for (std::size_t i = 0; i < 9; ++i) CHECK(table.rank[i] == keys[i]);
    CHECK(aggregate_general(9, outcomes) == std::optional(table.out));
  }

  // n=4, t=2: all six pairs plus (0,1) again.
  Batch dup{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1}};
  const auto dup_out = o.execute_round(dup);
  CHECK_ERROR_CODE(aggregate_ranks_exact_once(4, dup_out), ErrorCode::not_exact_once);
  // Missing pair.
  Batch missing{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  CHECK_ERROR_CODE(aggregate_ranks_exact_once(4, o.execute_round(missing)), ErrorCode::not_exact_once);
  // Repeated id inside a comparator.
  CHECK_ERROR_CODE(aggregate_ranks_exact_once(2, o.execute_round(Batch{{0, 0, 1}})), ErrorCode::not_exact_once);
}

TEST_CASE("rank aggregation succeeds iff coverage is exact once (property)") {
  Rng rng(21);
  int exact = 0, inexact = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const std::size_t width = 2 + rng.below(n - 1);
    Batch batch;
    const std::size_t count = 1 + rng.below(8);
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<ElementId> ids(n);
      std::iota(ids.begin(), ids.end(), ElementId{0});
      rng.shuffle(std::span<ElementId>(ids));
      ids.resize(2 + rng.below(width - 1));
      batch.push_back(ids);
    }
    std::size_t nn = n;
    if (trial % 4 == 0) {
      // A random batch is almost never exact once; mix in a minimal design.
      nn = 4;
      batch = affine_plane(2).lines;
    }
    const auto cov = validate_pair_coverage(nn, batch);
    auto oracle = KeyOracle::from_keys(random_keys(nn, rng));
    const auto outcomes = oracle.execute_round(batch);
    bool ok = true;
    try {
      (void)aggregate_ranks_exact_once(nn, outcomes);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_exact_once);
      ok = false;
    }
    CHECK(ok == cov.exact_once);
    (ok ? exact : inexact)++;
  }
  CHECK(exact > 50);
  CHECK(inexact > 50);
}

TEST_CASE("general aggregation") {
  auto o = KeyOracle::from_keys({0, 1, 2});
  CHECK_FALSE(aggregate_general(3, o.execute_round(Batch{{0, 1}})).has_value());
  const auto chain = o.execute_round(Batch{{0, 1}, {1, 2}});
  CHECK(aggregate_general(3, chain) == std::optional(std::vector<ElementId>{0, 1, 2}));
  const auto dup = o.execute_round(Batch{{1, 0}, {0, 1}, {2, 1}, {1, 2}});
  CHECK(aggregate_general(3, dup) == std::optional(std::vector<ElementId>{0, 1, 2}));
  CHECK(aggregate_general(1, {}) == std::optional(std::vector<ElementId>{0}));
}

TEST_CASE("pair coverage") {
  const auto plane = validate_pair_coverage(9, design_to_schedule(affine_plane(3)).rounds.front());
  CHECK(plane.exact_once);
  CHECK(plane.covered_pairs == 36);
  CHECK(plane.min_multiplicity == 1);
  CHECK(plane.max_multiplicity == 1);

  const auto part = validate_pair_coverage(10, partition_schedule(10, 4).rounds.front());
  CHECK_FALSE(part.exact_once);
  CHECK(part.uncovered.empty());

  const auto gap = validate_pair_coverage(4, Batch{{0, 1, 2}});
  CHECK(gap.uncovered.size() == 3);
  CHECK(gap.min_multiplicity == 0);

  // Repeats inside a comparator count once.
  CHECK(validate_pair_coverage(2, Batch{{0, 1, 1, 0}}).exact_once);
}

TEST_CASE("two comparators never cover everything (property)") {
  Rng rng(35);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng.below(48);
    const std::size_t t = 2 + rng.below(n - 2);  // t < n
    Batch batch;
    for (int c = 0; c < 2; ++c) {
      Assignment a(t);
      for (auto& x : a) x = static_cast<ElementId>(rng.below(n));
      batch.push_back(a);
    }
    CHECK_FALSE(validate_pair_coverage(n, batch).uncovered.empty());
  }
}

TEST_CASE("gamma") {
  CHECK(gamma(9, 3) == Rational{12, 1});
  CHECK(gamma(7, 7) == Rational{1, 1});
  CHECK(gamma(81, 3) == Rational{1080, 1});
  CHECK(gamma(10, 4) == Rational{15, 2});
  CHECK_ERROR_CODE(gamma(5, 1), ErrorCode::invalid_input);
  CHECK(less_than(22, gamma(10, 4), 3));
  CHECK_FALSE(less_than(23, gamma(10, 4), 3));
  CHECK_ERROR_CODE(make_rational(1, 0), ErrorCode::division_by_zero);
}

TEST_CASE("schedule text format") {
  Schedule s{5, 3, {Batch{{0, 1, 2}, {3, 4}}, Batch{{4, 0}}}};
  const std::string text = to_text(s);
  CHECK(text == "5 3 2\n0 1 2\n3 4\n--\n4 0\n");
  CHECK(parse_schedule(text) == s);
  CHECK(parse_schedule("# note\r\n5 3 2\r\n0 1 2\r\n3 4\r\n--\r\n4 0\r\n") == s);
  CHECK_ERROR_CODE(parse_schedule("5 3 2\n0 1 2\n"), ErrorCode::parse_error);
  CHECK_ERROR_CODE(parse_schedule("5 3 1\n0 1 2 3\n"), ErrorCode::width_violation);
  CHECK_ERROR_CODE(parse_schedule("5 3 1\n0 9\n"), ErrorCode::invalid_input);
  CHECK_ERROR_CODE(parse_schedule("5 x 1\n"), ErrorCode::parse_error);
}

}  // TEST_SUITE
