#include <filesystem>

#include "support.hpp"
#include "tsort/designs.hpp"
#include "tsort/gf.hpp"

using namespace tsort;
using tsort::test::order_of;
using tsort::test::random_keys;

#ifndef TSORT_TEST_DATA_DIR
#define TSORT_TEST_DATA_DIR "tests/data"
#endif

TEST_SUITE("designs") {

TEST_CASE("affine planes") {
  const auto d2 = affine_plane(2);
  CHECK(d2.n_points == 4);
  CHECK(d2.lines.size() == 6);
  const auto d3 = affine_plane(3);
  CHECK(d3.lines.size() == 12);
  CHECK(verify_steiner2(d3).ok);
  const auto d4 = affine_plane(4);
  CHECK(d4.n_points == 16);
  CHECK(d4.lines.size() == 20);
  CHECK(verify_steiner2(affine_plane(7)).ok);
  CHECK_ERROR_CODE(affine_plane(6), ErrorCode::invalid_input);
  CHECK_ERROR_CODE(affine_plane(1), ErrorCode::invalid_input);
}

TEST_CASE("affine point numbering") {
  // Line y = 1*x + 0 over GF(3): points (x, x).
  const auto d = affine_plane(3);
  CHECK(d.lines[3] == std::vector<ElementId>{0, 4, 8});
  // The last line is the vertical x = 2.
  CHECK(d.lines.back() == std::vector<ElementId>{6, 7, 8});
}

TEST_CASE("every prime power t <= 16 gives t^2 + t lines") {
  for (std::size_t t = 2; t <= 16; ++t) {
    if (!as_prime_power(t)) continue;
    CAPTURE(t);
    for (const auto& d : {affine_plane(t), shifted_matrix_design(t)}) {
      CHECK(d.lines.size() == t * t + t);
      CHECK(gamma(t * t, t) == Rational{t * t + t, 1});
      CHECK(verify_steiner2(d).ok);
    }
  }
}

TEST_CASE("shifted matrices") {
  const auto d2 = shifted_matrix_design(2);
  CHECK(d2.lines.size() == 6);
  CHECK(validate_pair_coverage(4, d2.lines).exact_once);

  // t = 3: rows, then columns of M_0, M_1, M_2.
  const auto d3 = shifted_matrix_design(3);
  CHECK(d3.lines[0] == std::vector<ElementId>{0, 1, 2});
  CHECK(d3.lines[3] == std::vector<ElementId>{0, 3, 6});
  CHECK(d3.lines[6] == std::vector<ElementId>{0, 5, 7});
  CHECK(d3.lines[7] == std::vector<ElementId>{1, 3, 8});
  CHECK(d3.lines[8] == std::vector<ElementId>{2, 4, 6});

  // t = 5 (prime): M_i rotates row r by i*r positions.
  const auto d5 = shifted_matrix_design(5);
  for (std::uint32_t i = 0; i < 5; ++i) {
    for (std::uint32_t col = 0; col < 5; ++col) {
      const auto& line = d5.lines[5 + i * 5 + col];
      for (std::uint32_t r = 0; r < 5; ++r) {
        const std::uint32_t c = (col + 5 * 5 - i * r % 5) % 5;
        CHECK(line[r] == r * 5 + c);
      }
    }
  }
  CHECK_ERROR_CODE(shifted_matrix_design(10), ErrorCode::invalid_input);
}

TEST_CASE("projective planes") {
  const auto fano = projective_plane(2);
  CHECK(fano.n_points == 7);
  CHECK(fano.lines.size() == 7);
  CHECK(fano.line_size == 3);
  CHECK(design_to_schedule(fano).rounds.front().size() == 7);
  for (std::size_t q : {2, 3, 4, 5, 7, 8, 9}) {
    CAPTURE(q);
    const auto d = projective_plane(q);
    CHECK(d.n_points == q * q + q + 1);
    CHECK(d.lines.size() == q * q + q + 1);
    for (const auto& l : d.lines) CHECK(l.size() == q + 1);
    CHECK(verify_steiner2(d).ok);
  }
  CHECK_ERROR_CODE(projective_plane(6), ErrorCode::invalid_input);
}

TEST_CASE("verifier reports") {
  auto d = affine_plane(5);
  d.lines.erase(d.lines.begin() + 7);
  const auto missing = verify_steiner2(d);
  CHECK_FALSE(missing.ok);
  CHECK(missing.violations.size() == 10);
  for (const auto& v : missing.violations) CHECK(v.multiplicity == 0);

  auto dup = affine_plane(3);
  dup.lines.push_back(dup.lines.front());
  const auto twice = verify_steiner2(dup);
  CHECK(twice.violations.size() == 3);
  CHECK(twice.violations.front().multiplicity == 2);

  auto bad = affine_plane(3);
  bad.lines[0] = {0, 0, 1};
  CHECK(verify_steiner2(bad).malformed_lines == std::vector<std::size_t>{0});
  bad.lines[0] = {0, 1, 99};
  CHECK_FALSE(verify_steiner2(bad).ok);
}

TEST_CASE("S(2,6,36) candidate fails") {
  const auto d = read_design(std::filesystem::path(TSORT_TEST_DATA_DIR) / "s2_6_36_candidate.txt");
  CHECK(d.n_points == 36);
  CHECK(d.line_size == 6);
  CHECK(d.lines.size() == 42);
  const auto r = verify_steiner2(d);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.size() == 324);
}

TEST_CASE("design schedules sort") {
  Rng rng(17);
  for (std::size_t t : {2, 3, 4, 5, 7}) {
    const auto s = design_to_schedule(affine_plane(t));
    CHECK(s.rounds.size() == 1);
    for (int trial = 0; trial < 10; ++trial) {
      const auto keys = random_keys(t * t, rng);
      auto oracle = KeyOracle::from_keys(keys, t);
      CHECK(aggregate_ranks_exact_once(t * t, execute(oracle, s).flattened()).out == order_of(keys));
    }
  }
  CHECK(design_to_schedule(Design{}).rounds.empty());
  CHECK_ERROR_CODE(design_to_schedule(affine_plane(3), 2), ErrorCode::width_violation);
}

TEST_CASE("design files round-trip") {
  const auto path = std::filesystem::temp_directory_path() / "tsort_design_roundtrip.txt";
  for (const auto& d : {affine_plane(4), projective_plane(3), shifted_matrix_design(5)}) {
    write_design(path, d);
    const auto back = read_design(path);
    CHECK(back == d);
    CHECK(verify_steiner2(back).ok);
  }
  std::filesystem::remove(path);
}

}  // TEST_SUITE
