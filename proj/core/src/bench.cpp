#include "tsort/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tsort/error.hpp"
#include "tsort/rng.hpp"
#include "tsort/schedules.hpp"

namespace tsort {

namespace {

const char* const kCsvHeader = "trial,seed,rounds,total_comparators,comparators_per_round_json";

[[noreturn]] void config_error(const ExperimentConfig& c, const std::string& why) {
  throw Error(ErrorCode::configuration_error, std::string(to_string(c.algorithm)) + " at n=" +
                                                  std::to_string(c.n) + ", t=" + std::to_string(c.t) + ": " + why);
}

TrialRecord run_one(const ExperimentConfig& config, std::size_t index, const Schedule* minimal) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = index;
  rec.seed = trial_seed(config.master_seed, index);
  KeyOracle oracle = KeyOracle::from_seed(config.n, rec.seed, config.t);

  std::vector<ElementId> order;
  CostReport cost;
  switch (config.algorithm) {
    case BenchAlgorithm::minimal: {
      const Execution ex = execute(oracle, *minimal);
      auto sorted = aggregate_general(config.n, ex.flattened());
      if (!sorted) throw Error(ErrorCode::protocol_violation, "minimal schedule left pairs unresolved");
      order = std::move(*sorted);
      cost = ex.cost;
      break;
    }
    case BenchAlgorithm::baseline: {
      auto r = beigel_gill_sort(oracle, rec.seed, config.baseline);
      order = std::move(r.order);
      cost = r.cost;
      break;
    }
    default: {
      const TwoRoundAlgorithm alg = config.algorithm == BenchAlgorithm::square    ? TwoRoundAlgorithm::square
                                    : config.algorithm == BenchAlgorithm::general ? TwoRoundAlgorithm::general
                                    : config.algorithm == BenchAlgorithm::large_t ? TwoRoundAlgorithm::large_t
                                                                                  : TwoRoundAlgorithm::automatic;
      auto r = two_round_sort(oracle, alg, rec.seed);
      order = std::move(r.order);
      cost = r.cost;
      break;
    }
  }
  if (!oracle.is_key_ascending(order)) {
    throw Error(ErrorCode::protocol_violation, "trial " + std::to_string(index) + " produced a wrong order");
  }
  rec.rounds = cost.rounds();
  rec.total_comparators = cost.total_comparators();
  rec.comparators_per_round = cost.comparators_per_round;
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

Stats stats_of(std::vector<double> v) {
  Stats s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double sq = 0.0;
  for (double x : v) sq += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(v.size()));
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  s.median = v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
  s.max = v.back();
  return s;
}

std::uint64_t parse_u64(std::string_view field, std::size_t line) {
  std::uint64_t v = 0;
  if (field.empty()) throw Error(ErrorCode::parse_error, "empty field on line " + std::to_string(line));
  for (char c : field) {
    if (c < '0' || c > '9') throw Error(ErrorCode::parse_error, "bad number on line " + std::to_string(line));
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

const char* to_string(BenchAlgorithm a) noexcept {
  switch (a) {
    case BenchAlgorithm::minimal: return "minimal";
    case BenchAlgorithm::square: return "square";
    case BenchAlgorithm::general: return "general";
    case BenchAlgorithm::large_t: return "large-t";
    case BenchAlgorithm::randomized: return "randomized";
    case BenchAlgorithm::baseline: return "baseline";
  }
  return "unknown";
}

std::optional<BenchAlgorithm> parse_bench_algorithm(std::string_view name) noexcept {
  for (auto a : {BenchAlgorithm::minimal, BenchAlgorithm::square, BenchAlgorithm::general, BenchAlgorithm::large_t,
                 BenchAlgorithm::randomized, BenchAlgorithm::baseline}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) noexcept {
  return derive_seed(master_seed, index);
}

void validate(const ExperimentConfig& c) {
  if (c.trials == 0) config_error(c, "trials must be >= 1");
  if (c.n == 0) config_error(c, "n must be >= 1");
  if (c.t < 2) config_error(c, "t must be >= 2");
  const std::size_t root = ceil_sqrt(c.n);
  switch (c.algorithm) {
    case BenchAlgorithm::minimal:
    case BenchAlgorithm::randomized:
      break;
    case BenchAlgorithm::square:
      if (c.t % 2 != 0 || c.n != c.t * c.t) config_error(c, "square algorithm needs n = t^2 with t even");
      break;
    case BenchAlgorithm::general:
      if (c.t > root) config_error(c, "general algorithm needs t <= ceil(sqrt(n))");
      break;
    case BenchAlgorithm::large_t:
      if (c.t <= root || c.t >= c.n) config_error(c, "large-t algorithm needs ceil(sqrt(n)) < t < n");
      break;
    case BenchAlgorithm::baseline:
      if (c.t < 3) config_error(c, "baseline needs t >= 3");
      break;
  }
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t index) {
  validate(config);
  std::optional<Schedule> minimal;
  if (config.algorithm == BenchAlgorithm::minimal) minimal = minimal_schedule(config.n, config.t).schedule;
  return run_one(config, index, minimal ? &*minimal : nullptr);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::optional<Schedule> minimal;
  if (config.algorithm == BenchAlgorithm::minimal) minimal = minimal_schedule(config.n, config.t).schedule;
  const Schedule* plan = minimal ? &*minimal : nullptr;

  ExperimentResult result;
  result.config = config;
  result.records.resize(config.trials);
  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, config.trials);
  if (workers == 1) {
    for (std::size_t i = 0; i < config.trials; ++i) result.records[i] = run_one(config, i, plan);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < config.trials; i += workers) result.records[i] = run_one(config, i, plan);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  result.summary = summarize(result.records);
  return result;
}

Summary summarize(std::span<const TrialRecord> records) {
  Summary s;
  s.trials = records.size();
  std::vector<double> rounds, comps;
  for (const auto& r : records) {
    rounds.push_back(static_cast<double>(r.rounds));
    comps.push_back(static_cast<double>(r.total_comparators));
    ++s.round_histogram[r.rounds];
  }
  s.rounds = stats_of(std::move(rounds));
  s.comparators = stats_of(std::move(comps));
  return s;
}

std::string to_csv(std::span<const TrialRecord> records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.rounds) + ',' +
           std::to_string(r.total_comparators) + ",\"" + nlohmann::json(r.comparators_per_round).dump() + "\"\n";
  }
  return out;
}

std::vector<TrialRecord> parse_csv(std::string_view text) {
  std::vector<TrialRecord> records;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw Error(ErrorCode::parse_error, "unexpected CSV header");
      header = false;
      continue;
    }
    std::string_view fields[4];
    for (auto& f : fields) {
      const auto comma = line.find(',');
      if (comma == std::string_view::npos) {
        throw Error(ErrorCode::parse_error, "too few fields on line " + std::to_string(line_no));
      }
      f = line.substr(0, comma);
      line.remove_prefix(comma + 1);
    }
    if (line.size() < 2 || line.front() != '"' || line.back() != '"') {
      throw Error(ErrorCode::parse_error, "per-round field must be quoted on line " + std::to_string(line_no));
    }
    TrialRecord r;
    r.trial = parse_u64(fields[0], line_no);
    r.seed = parse_u64(fields[1], line_no);
    r.rounds = parse_u64(fields[2], line_no);
    r.total_comparators = parse_u64(fields[3], line_no);
    try {
      r.comparators_per_round =
          nlohmann::json::parse(line.substr(1, line.size() - 2)).get<std::vector<std::uint64_t>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  if (header) throw Error(ErrorCode::parse_error, "missing CSV header");
  return records;
}

void write_csv(const std::filesystem::path& path, std::span<const TrialRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + path.string());
  out << to_csv(records);
}

std::vector<TrialRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string histogram_csv(const Summary& summary) {
  std::string out = "rounds,trials\n";
  if (summary.round_histogram.empty()) return out;
  const auto lo = summary.round_histogram.begin()->first;
  const auto hi = summary.round_histogram.rbegin()->first;
  for (std::size_t r = lo; r <= hi; ++r) {
    const auto it = summary.round_histogram.find(r);
    out += std::to_string(r) + ',' + std::to_string(it == summary.round_histogram.end() ? 0 : it->second) + '\n';
  }
  return out;
}

std::vector<CompareRow> compare_table(std::span<const ExperimentConfig> configs) {
  std::vector<CompareRow> rows;
  for (const auto& c : configs) {
    if (c.n != configs.front().n || c.t != configs.front().t) {
      config_error(c, "compare_table needs a shared (n, t)");
    }
  }
  for (const auto& c : configs) {
    const ExperimentResult r = run_experiment(c);
    CompareRow row;
    row.algorithm = c.algorithm;
    row.n = c.n;
    row.t = c.t;
    row.mean_comparators = r.summary.comparators.mean;
    row.mean_rounds = r.summary.rounds.mean;
    row.gamma = make_rational(binomial2(c.n), binomial2(c.t)).to_double();
    row.ratio = row.gamma > 0.0 ? row.mean_comparators / row.gamma : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string format_table(std::span<const CompareRow> rows) {
  std::string out = "algorithm        n      t   mean_comparators  mean_rounds      gamma   ratio\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-12s %6zu %6zu %18.2f %12.3f %10.2f %7.3f\n", to_string(r.algorithm), r.n, r.t,
                  r.mean_comparators, r.mean_rounds, r.gamma, r.ratio);
    out += buf;
  }
  return out;
}

}  // namespace tsort
