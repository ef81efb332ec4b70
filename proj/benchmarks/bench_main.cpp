// Microbenchmarks for the hot paths: channel evaluation, the position
// searches, the duration solver and the end-to-end per-trial schemes.
#include <benchmark/benchmark.h>

#include "pamac/baselines.hpp"
#include "pamac/capacity.hpp"
#include "pamac/experiment.hpp"

namespace {

pamac::Scenario desk_scenario(int users, int antennas, double dx) {
  pamac::ExperimentConfig cfg;
  cfg.k = users;
  cfg.dx = dx;
  cfg.seed = 5;
  return pamac::scenario_for_trial(cfg, 0, antennas);
}

void BM_effective_channel(benchmark::State& state) {
  const auto s = desk_scenario(10, static_cast<int>(state.range(0)), 100.0);
  const auto p = pamac::centered_pattern(s, 0.0);
  int user = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pamac::effective_channel(s, p, user));
    user = (user + 1) % 10;
  }
}
BENCHMARK(BM_effective_channel)->Arg(1)->Arg(4)->Arg(8);

void BM_channel_gains(benchmark::State& state) {
  const auto s = desk_scenario(10, 4, 100.0);
  const auto p = pamac::centered_pattern(s, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(pamac::channel_gains(s, p));
}
BENCHMARK(BM_channel_gains);

void BM_refine_single_user(benchmark::State& state) {
  const auto s = desk_scenario(10, static_cast<int>(state.range(0)), 100.0);
  const auto cfg = pamac::default_search_config(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(pamac::refine_single_user_pattern(
        s, pamac::initial_single_user_pattern(s, 3), 3, cfg));
}
BENCHMARK(BM_refine_single_user)->Arg(2)->Arg(4);

void BM_common_pattern(benchmark::State& state) {
  const auto s = desk_scenario(10, static_cast<int>(state.range(0)), 20.0);
  const auto cfg = pamac::default_search_config(s);
  std::vector<int> everyone{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto init = pamac::centered_pattern(s, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(pamac::common_pattern(s, everyone, init, cfg));
}
BENCHMARK(BM_common_pattern)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_time_allocation(benchmark::State& state) {
  std::vector<double> c{0.3, 5.0, 1.7, 9.2, 0.01, 2.2, 4.4, 0.9, 3.3, 6.1};
  for (auto _ : state)
    benchmark::DoNotOptimize(pamac::time_allocation_solve(c, 1.0));
}
BENCHMARK(BM_time_allocation);

void BM_capacity_bound(benchmark::State& state) {
  const auto s = desk_scenario(10, static_cast<int>(state.range(0)), 100.0);
  const auto cfg = pamac::default_search_config(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(pamac::capacity_bound(s, cfg));
}
BENCHMARK(BM_capacity_bound)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_finite_m_rate(benchmark::State& state) {
  const auto s = desk_scenario(10, 1, 20.0);
  const auto cfg = pamac::default_search_config(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        pamac::finite_m_rate(s, static_cast<int>(state.range(0)), cfg));
}
BENCHMARK(BM_finite_m_rate)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
