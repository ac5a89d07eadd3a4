#include <benchmark/benchmark.h>

#include <random>

#include "zd/kernels.hpp"

namespace {

using namespace zd;

std::vector<MemoryOneStrategy> random_players(int n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MemoryOneStrategy> players(n, MemoryOneStrategy{std::vector<double>(profile_count(n)), 0.5});
  for (auto& m : players) {
    for (auto& p : m.p) p = u(rng);
  }
  return players;
}

template <auto Kernel>
void BM_feasibility(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto table = public_goods(n, 2.0, 1.0);
  // Interior baseline, so every grid point scans all profiles.
  auto relation = PayoffRelation::equal_weights(n, 0.9, 0.0);
  const auto bounds = is_enforceable(table, relation);
  relation.l = 0.5 * (bounds.l_lower + bounds.l_upper);
  const auto margins = constraint_margins(table, relation);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(margins, 0.9, kOracleGrid));
}

template <auto Kernel>
void BM_transition(benchmark::State& state) {
  const auto players = random_players(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(players));
}

template <auto Kernel>
void BM_rollouts(benchmark::State& state) {
  const int n = 5;
  const auto table = public_goods(n, 2.0, 1.0);
  std::vector<Strategy> players;
  for (const auto& m : random_players(n)) players.push_back(Strategy::memory_one(m));
  kernels::RolloutProblem problem{&table, players, 0.8, Estimator::DiscountedSum, nullptr, nullptr};
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(problem, 1, state.range(0)));
}

BENCHMARK(BM_feasibility<kernels::serial::p0_feasibility>)->Arg(5)->Arg(10);
BENCHMARK(BM_feasibility<kernels::omp::p0_feasibility>)->Arg(5)->Arg(10);
BENCHMARK(BM_transition<kernels::serial::transition_matrix>)->Arg(8)->Arg(11);
BENCHMARK(BM_transition<kernels::omp::transition_matrix>)->Arg(8)->Arg(11);
BENCHMARK(BM_rollouts<kernels::serial::rollouts>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rollouts<kernels::omp::rollouts>)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
