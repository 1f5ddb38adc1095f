#include <benchmark/benchmark.h>

#include "tsort/baseline.hpp"
#include "tsort/designs.hpp"
#include "tsort/randomized.hpp"
#include "tsort/schedules.hpp"

namespace {

using namespace tsort;

void BM_AffinePlane(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(affine_plane(t));
}
BENCHMARK(BM_AffinePlane)->Arg(7)->Arg(16)->Arg(32)->Arg(64);

void BM_ProjectivePlane(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(projective_plane(q));
}
BENCHMARK(BM_ProjectivePlane)->Arg(8)->Arg(16)->Arg(31);

void BM_Compose(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compose(3, 2));
}
BENCHMARK(BM_Compose);

void BM_PartitionSchedule(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(partition_schedule(n, 10));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PartitionSchedule)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

void BM_ExecuteAndRank(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const Schedule s = design_to_schedule(affine_plane(t));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    KeyOracle oracle = KeyOracle::from_seed(t * t, ++seed, t);
    benchmark::DoNotOptimize(aggregate_ranks_exact_once(t * t, execute(oracle, s).flattened()));
  }
}
BENCHMARK(BM_ExecuteAndRank)->Arg(16)->Arg(32);

void BM_TwoRound(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = static_cast<std::size_t>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    KeyOracle oracle = KeyOracle::from_seed(n, ++seed, t);
    benchmark::DoNotOptimize(two_round_sort(oracle, TwoRoundAlgorithm::automatic, seed));
  }
}
BENCHMARK(BM_TwoRound)->Args({10000, 100})->Args({10000, 1000})->Args({100000, 316});

void BM_Baseline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = static_cast<std::size_t>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    KeyOracle oracle = KeyOracle::from_seed(n, ++seed, t);
    benchmark::DoNotOptimize(beigel_gill_sort(oracle, seed));
  }
}
BENCHMARK(BM_Baseline)->Args({10000, 100})->Args({100000, 316});

}  // namespace
BENCHMARK_MAIN();
