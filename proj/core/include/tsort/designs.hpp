#pragma once

// Minimal single-round designs: sets of t-point lines over n points in which
// every pair of points lies on exactly one line (Steiner systems S(2, t, n)).
// Executing one comparator per line compares every pair exactly once.

#include <cstddef>
#include <filesystem>
#include <vector>

#include "tsort/core.hpp"

namespace tsort {

struct Design {
  std::size_t n_points = 0;
  std::size_t line_size = 0;
  std::vector<std::vector<ElementId>> lines;

  friend bool operator==(const Design&, const Design&) = default;
};

struct PairViolation {
  ElementId a = 0;
  ElementId b = 0;
  std::uint32_t multiplicity = 0;
};

struct SteinerReport {
  bool ok = false;
  std::vector<PairViolation> violations;   // pairs not on exactly one line
  std::vector<std::size_t> malformed_lines;  // wrong size, repeats, or bad ids
};

SteinerReport verify_steiner2(const Design& design);

/// Affine plane of order t over GF(t)^2: lines y = a*x + b, then the t
/// vertical lines x = c. Point (x, y) is element phi_inv(x) * t + phi_inv(y).
/// Throws invalid_input unless t is a prime power.
Design affine_plane(std::size_t t);

/// Row blocks S_0..S_{t-1} followed by the columns of the shifted matrices
/// M_0..M_{t-1}, where M_i moves entry (r, c) of M_0 to column
/// phi_inv(phi(c) + phi(r) * phi(i)). Throws invalid_input unless t is a
/// prime power.
Design shifted_matrix_design(std::size_t t);

/// Projective plane of order q: points and lines are the normalised nonzero
/// vectors of GF(q)^3 (first nonzero coordinate 1), in lexicographic order
/// of their phi_inv coordinates. Throws invalid_input unless q is a prime
/// power.
Design projective_plane(std::size_t q);

/// One round, one comparator per line. width == 0 means line_size.
Schedule design_to_schedule(const Design& design, std::size_t width = 0);

/// Inverse of design_to_schedule; the schedule must have at most one round.
Design schedule_to_design(const Schedule& schedule);

void write_design(const std::filesystem::path& path, const Design& design);
Design read_design(const std::filesystem::path& path);

}  // namespace tsort
