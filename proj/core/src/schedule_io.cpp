#include "tsort/schedule_io.hpp"

#include <fstream>
#include <sstream>

#include "tsort/error.hpp"

namespace tsort {

std::string to_text(const Schedule& schedule) {
  std::ostringstream os;
  os << schedule.n << ' ' << schedule.width << ' ' << schedule.rounds.size() << '\n';
  for (std::size_t r = 0; r < schedule.rounds.size(); ++r) {
    if (r > 0) os << "--\n";
    for (const auto& a : schedule.rounds[r]) {
      for (std::size_t i = 0; i < a.size(); ++i) os << (i ? " " : "") << a[i];
      os << '\n';
    }
  }
  return os.str();
}

Schedule parse_schedule(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_header = false;
  std::size_t expected_rounds = 0;
  Schedule s;
  std::size_t lineno = 0;

  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      if (!(fields >> s.n >> s.width >> expected_rounds)) fail("expected header 'n t rounds'");
      std::string extra;
      if (fields >> extra) fail("trailing tokens in header");
      have_header = true;
      if (expected_rounds > 0) s.rounds.emplace_back();
      continue;
    }
    if (line == "--") {
      if (s.rounds.size() >= expected_rounds) fail("more rounds than declared");
      s.rounds.emplace_back();
      continue;
    }
    if (s.rounds.empty()) fail("comparator line in a schedule declaring zero rounds");
    Assignment a;
    long long id;
    while (fields >> id) {
      if (id < 0) fail("negative element id");
      a.push_back(static_cast<ElementId>(id));
    }
    if (!fields.eof()) fail("non-numeric token");
    s.rounds.back().push_back(std::move(a));
  }
  if (!have_header) throw Error(ErrorCode::parse_error, "missing header");
  if (s.rounds.size() != expected_rounds) {
    throw Error(ErrorCode::parse_error, "declared " + std::to_string(expected_rounds) +
                                            " rounds, found " + std::to_string(s.rounds.size()));
  }
  s.validate();
  return s;
}

void write_schedule(const std::filesystem::path& path, const Schedule& schedule,
                    std::string_view comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_input, "cannot open " + path.string() + " for writing");
  if (!comment.empty()) out << "# " << comment << '\n';
  out << to_text(schedule);
}

Schedule read_schedule(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schedule(buf.str());
}

}  // namespace tsort
