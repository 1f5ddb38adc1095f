#include "support.hpp"
#include "tsort/gf.hpp"
#include "tsort/schedules.hpp"

using namespace tsort;
using tsort::test::order_of;
using tsort::test::random_keys;
using tsort::test::sort_with;

namespace {

std::size_t max_width(const Schedule& s) {
  std::size_t w = 0;
  for (const auto& round : s.rounds) {
    for (const auto& a : round) w = std::max(w, a.size());
  }
  return w;
}

}  // namespace

TEST_SUITE("schedules") {

TEST_CASE("partition examples") {
  CHECK(partition_schedule(10, 4).comparator_count() == 10);
  CHECK(less_than(10, gamma(10, 4), 3));
  CHECK(partition_schedule(12, 4).comparator_count() == 15);
  const auto single = partition_schedule(6, 6);
  CHECK(single.rounds.size() == 1);
  CHECK(single.comparator_count() == 1);
  CHECK_ERROR_CODE(partition_schedule(10, 1), ErrorCode::invalid_input);
}

TEST_CASE("partition bounds and coverage, 2 <= t <= n <= 500") {
  for (std::size_t n = 2; n <= 500; n += 3) {
    for (std::size_t t = 2; t <= n; t += (n > 120 ? 5 : 1)) {
      const auto s = partition_schedule(n, t);
      const std::uint64_t count = s.comparator_count();
      const Rational g = gamma(n, t);
      CAPTURE(n);
      CAPTURE(t);
      CHECK(max_width(s) <= t);
      CHECK(less_than(count, g, 3));
      if (t % 2 == 0 && n % (t / 2) == 0) CHECK(less_than(count, g, 2));
      if (n <= 150) CHECK(validate_pair_coverage(n, s.rounds.front()).uncovered.empty());
    }
  }
}

TEST_CASE("odd t uses the split variant when it is cheaper") {
  // t = 3: plain groups of 1 give C(n,2) = 3 * gamma; the split variant is
  // strictly below that.
  for (std::size_t n : {4u, 9u, 20u, 57u}) {
    const auto s = partition_schedule(n, 3);
    CHECK(s.comparator_count() < binomial2(n));
    CHECK(validate_pair_coverage(n, s.rounds.front()).uncovered.empty());
  }
}

TEST_CASE("three comparators") {
  const auto s96 = three_comparator_schedule(9, 6);
  CHECK(s96.comparator_count() == 3);
  for (const auto& a : s96.rounds.front()) CHECK(a.size() == 6);

  const auto s107 = three_comparator_schedule(10, 7);
  const auto& b = s107.rounds.front();
  CHECK(b[0].size() == 7);
  CHECK(b[1].size() == 7);
  CHECK(b[2].size() == 6);
  CHECK(validate_pair_coverage(10, b).uncovered.empty());

  for (std::size_t t = 2; t <= 60; ++t) {
    for (std::size_t n = t + 1; 3 * t >= 2 * n; ++n) {
      const auto s = three_comparator_schedule(n, t);
      CHECK(s.comparator_count() == 3);
      CHECK(max_width(s) <= t);
      CHECK(validate_pair_coverage(n, s.rounds.front()).uncovered.empty());
    }
  }
  CHECK_ERROR_CODE(three_comparator_schedule(10, 6), ErrorCode::inapplicable);
  CHECK_ERROR_CODE(three_comparator_schedule(6, 6), ErrorCode::inapplicable);
}

TEST_CASE("composition") {
  CHECK(composition_depth(81, 3) == std::optional<std::size_t>(2));
  CHECK(composition_depth(9, 3) == std::optional<std::size_t>(1));
  CHECK_FALSE(composition_depth(27, 3).has_value());
  CHECK(composition_depth(65536, 2) == std::optional<std::size_t>(4));

  CHECK(compose(3, 1).comparator_count() == 12);
  const auto c81 = compose(3, 2);
  CHECK(c81.n == 81);
  CHECK(c81.comparator_count() == 1080);
  CHECK(validate_pair_coverage(81, c81.rounds.front()).exact_once);
  const auto c16 = compose(2, 2);
  CHECK(c16.comparator_count() == 120);
  CHECK(max_width(c16) == 2);
  CHECK(validate_pair_coverage(16, c16.rounds.front()).exact_once);

  CHECK_ERROR_CODE(compose(6, 2), ErrorCode::inapplicable);
  CHECK_ERROR_CODE(compose(3, 0), ErrorCode::inapplicable);
  CHECK_ERROR_CODE(compose(2, 4), ErrorCode::unsupported_size);
  CHECK(minimal_schedule(16513, 129).choice.tag == Construction::partition);
}

TEST_CASE("composition meets gamma for every n = t^(2^k) <= 10^4") {
  for (std::size_t t = 2; t <= 100; ++t) {
    if (!as_prime_power(t)) continue;
    for (std::size_t k = 1;; ++k) {
      std::size_t n = t;
      for (std::size_t i = 0; i < k; ++i) n *= n;
      if (n > 10000) break;
      CAPTURE(t);
      CAPTURE(k);
      const auto s = compose(t, k);
      CHECK(gamma(n, t) == Rational{s.comparator_count(), 1});
      CHECK(validate_pair_coverage(n, s.rounds.front()).exact_once);
    }
  }
}

TEST_CASE("dispatcher") {
  auto pick = [](std::size_t n, std::size_t t) { return minimal_schedule(n, t).choice.tag; };
  CHECK(pick(5, 7) == Construction::trivial);
  CHECK(pick(49, 7) == Construction::minimal_design);
  CHECK(minimal_schedule(49, 7).schedule.comparator_count() == 56);
  CHECK(pick(7, 3) == Construction::minimal_design);
  CHECK(minimal_schedule(7, 3).schedule.comparator_count() == 7);
  CHECK(pick(81, 3) == Construction::composed);
  CHECK(pick(10, 7) == Construction::three_comparator);
  CHECK(pick(100, 10) == Construction::partition);
  const auto p = minimal_schedule(100, 10);
  CHECK(less_than(p.schedule.comparator_count(), gamma(100, 10), 3));
  CHECK(validate_pair_coverage(100, p.schedule.rounds.front()).uncovered.empty());
  CHECK_FALSE(p.choice.certificate.empty());

  CHECK(parse_construction("three-comparator") == std::optional(Construction::three_comparator));
  CHECK_FALSE(parse_construction("bogus").has_value());
  CHECK_ERROR_CODE(construct(100, 10, Construction::minimal_design), ErrorCode::inapplicable);
  CHECK_ERROR_CODE(construct(100, 10, Construction::composed), ErrorCode::inapplicable);
}

TEST_CASE("dispatcher output sorts and respects gamma (property)") {
  Rng rng(44);
  for (std::size_t n = 2; n <= 120; ++n) {
    for (std::size_t t = 2; t <= n + 1; t += 1 + n / 15) {
      const auto cs = minimal_schedule(n, t);
      CAPTURE(n);
      CAPTURE(t);
      CHECK(max_width(cs.schedule) <= t);
      if (t <= n) CHECK_FALSE(less_than(cs.schedule.comparator_count(), gamma(n, t)));
      const auto keys = random_keys(n, rng);
      CHECK(sort_with(cs.schedule, keys) == std::optional(order_of(keys)));
    }
  }
}

TEST_CASE("remap") {
  const Batch local{{0, 2}, {1}};
  const std::vector<ElementId> ids{7, 8, 9};
  CHECK(remap(local, ids) == Batch{{7, 9}, {8}});
  CHECK_ERROR_CODE(remap(Batch{{3}}, ids), ErrorCode::invalid_input);
}

}  // TEST_SUITE
