#include "tsort/designs.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "tsort/error.hpp"
#include "tsort/gf.hpp"
#include "tsort/schedule_io.hpp"

namespace tsort {

namespace {

FieldSpec field_for(std::size_t order, const char* what) {
  if (order > (1u << 16) || !as_prime_power(order)) {
    throw Error(ErrorCode::invalid_input,
                std::string(what) + " order " + std::to_string(order) + " is not a prime power");
  }
  return field_of_order(static_cast<std::uint32_t>(order));
}

void require_steiner(const Design& d, const char* what) {
  const auto report = verify_steiner2(d);
  if (!report.ok) {
    throw Error(ErrorCode::protocol_violation,
                std::string(what) + " failed Steiner verification (" +
                    std::to_string(report.violations.size()) + " bad pairs)");
  }
}

// Normalised representatives of the 1-dim subspaces of GF(q)^3, as phi_inv
// coordinate triples in lexicographic order.
std::vector<std::array<std::uint32_t, 3>> projective_points(std::uint32_t q) {
  std::vector<std::array<std::uint32_t, 3>> pts;
  pts.push_back({0, 0, 1});
  for (std::uint32_t z = 0; z < q; ++z) pts.push_back({0, 1, z});
  for (std::uint32_t y = 0; y < q; ++y) {
    for (std::uint32_t z = 0; z < q; ++z) pts.push_back({1, y, z});
  }
  return pts;
}

}  // namespace

SteinerReport verify_steiner2(const Design& d) {
  SteinerReport report;
  const std::size_t n = d.n_points;
  Batch batch;
  batch.reserve(d.lines.size());
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const auto& line = d.lines[i];
    auto sorted = line;
    std::sort(sorted.begin(), sorted.end());
    const bool repeats = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    const bool out_of_range = !sorted.empty() && sorted.back() >= n;
    if (line.size() != d.line_size || repeats || out_of_range) {
      report.malformed_lines.push_back(i);
      if (out_of_range) continue;
    }
    batch.push_back(line);
  }

  // Saturating byte counters keep the table at C(n,2) bytes.
  std::vector<std::uint8_t> mult(binomial2(n), 0);
  std::vector<ElementId> ids;
  for (const auto& line : batch) {
    ids = line;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const std::size_t row = std::size_t{ids[i]} * n - std::size_t{ids[i]} * (ids[i] + 1) / 2;
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        auto& m = mult[row + (ids[j] - ids[i] - 1)];
        if (m < 255) ++m;
      }
    }
  }
  std::size_t idx = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b, ++idx) {
      if (mult[idx] != 1) {
        report.violations.push_back({static_cast<ElementId>(a), static_cast<ElementId>(b), mult[idx]});
      }
    }
  }
  report.ok = report.violations.empty() && report.malformed_lines.empty();
  return report;
}

Design affine_plane(std::size_t t) {
  const FieldSpec f = field_for(t, "affine plane");
  const auto q = f.order();
  Design d{std::size_t{q} * q, q, {}};
  d.lines.reserve(std::size_t{q} * q + q);
  auto id = [q](std::uint32_t x, std::uint32_t y) { return static_cast<ElementId>(x * q + y); };

  for (std::uint32_t slope = 0; slope < q; ++slope) {
    for (std::uint32_t icpt = 0; icpt < q; ++icpt) {
      std::vector<ElementId> line;
      line.reserve(q);
      for (std::uint32_t x = 0; x < q; ++x) {
        const FieldElem y = f.add(f.mul(f.phi(slope), f.phi(x)), f.phi(icpt));
        line.push_back(id(x, f.phi_inv(y)));
      }
      d.lines.push_back(std::move(line));
    }
  }
  for (std::uint32_t x = 0; x < q; ++x) {
    std::vector<ElementId> line;
    line.reserve(q);
    for (std::uint32_t y = 0; y < q; ++y) line.push_back(id(x, y));
    d.lines.push_back(std::move(line));
  }
  require_steiner(d, "affine plane");
  return d;
}

Design shifted_matrix_design(std::size_t t) {
  const FieldSpec f = field_for(t, "shifted-matrix design");
  const auto q = f.order();
  Design d{std::size_t{q} * q, q, {}};
  d.lines.reserve(std::size_t{q} * q + q);

  for (std::uint32_t r = 0; r < q; ++r) {
    std::vector<ElementId> row(q);
    for (std::uint32_t c = 0; c < q; ++c) row[c] = r * q + c;
    d.lines.push_back(std::move(row));
  }
  for (std::uint32_t i = 0; i < q; ++i) {
    std::vector<std::vector<ElementId>> matrix(q, std::vector<ElementId>(q));
    for (std::uint32_t r = 0; r < q; ++r) {
      const FieldElem shift = f.mul(f.phi(r), f.phi(i));
      for (std::uint32_t c = 0; c < q; ++c) {
        const std::uint32_t col = f.phi_inv(f.add(f.phi(c), shift));
        matrix[r][col] = r * q + c;
      }
    }
    for (std::uint32_t col = 0; col < q; ++col) {
      std::vector<ElementId> line(q);
      for (std::uint32_t r = 0; r < q; ++r) line[r] = matrix[r][col];
      d.lines.push_back(std::move(line));
    }
  }
  require_steiner(d, "shifted-matrix design");
  return d;
}

Design projective_plane(std::size_t order) {
  const FieldSpec f = field_for(order, "projective plane");
  const auto q = f.order();
  const auto pts = projective_points(q);
  Design d{pts.size(), std::size_t{q} + 1, {}};
  d.lines.reserve(pts.size());

  // A line is the kernel of a normalised dual vector.
  for (const auto& dual : pts) {
    std::vector<ElementId> line;
    line.reserve(q + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      FieldElem dot = f.zero();
      for (int k = 0; k < 3; ++k) dot = f.add(dot, f.mul(f.phi(dual[k]), f.phi(pts[i][k])));
      if (dot == f.zero()) line.push_back(static_cast<ElementId>(i));
    }
    d.lines.push_back(std::move(line));
  }
  require_steiner(d, "projective plane");
  return d;
}

Schedule design_to_schedule(const Design& design, std::size_t width) {
  const std::size_t w = width == 0 ? design.line_size : width;
  if (w < design.line_size) {
    throw Error(ErrorCode::width_violation, "design lines of size " + std::to_string(design.line_size) +
                                                " exceed width " + std::to_string(w));
  }
  Schedule s{design.n_points, w, {}};
  if (!design.lines.empty()) s.rounds.push_back(design.lines);
  return s;
}

Design schedule_to_design(const Schedule& schedule) {
  if (schedule.rounds.size() > 1) {
    throw Error(ErrorCode::invalid_input, "a design is a single-round schedule");
  }
  Design d{schedule.n, schedule.width, {}};
  if (!schedule.rounds.empty()) d.lines = schedule.rounds.front();
  return d;
}

void write_design(const std::filesystem::path& path, const Design& design) {
  write_schedule(path, design_to_schedule(design));
}

Design read_design(const std::filesystem::path& path) { return schedule_to_design(read_schedule(path)); }

}  // namespace tsort
