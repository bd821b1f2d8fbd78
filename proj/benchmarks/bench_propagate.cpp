#include <benchmark/benchmark.h>

#include <numbers>

#include "aro/propagator.hpp"
#include "aro/sweep.hpp"

using namespace aro;

static void BM_PropagateTripod(benchmark::State& state) {
  const auto pulse = PulseSpec::default_gaussian(gaussian_peak_for_area(10.0 * std::numbers::pi, 1.0));
  const auto h = build_tripod(5.0, 0.0, pulse);
  const TimeGrid grid = default_grid(pulse, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_final(h, StateVector::basis(4, 1), grid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.n_steps()));
}
BENCHMARK(BM_PropagateTripod)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_PropagateLadder(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pulse = PulseSpec::default_gaussian(gaussian_peak_for_area(20.0 * std::numbers::pi, 1.0));
  const auto h = build_ladder(n, n, 5.0, 5.0, 0.0, pulse);
  const TimeGrid grid = default_grid(pulse);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_final(h, StateVector::basis(h.dimension(), (n - 1) / 2), grid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.n_steps()));
}
BENCHMARK(BM_PropagateLadder)->Arg(3)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

// A short row of the ladder visibility scan on one worker.
static void BM_LadderScanRow(benchmark::State& state) {
  ScanSpec s;
  s.system = {5, 5, 5.0, 5.0, {DetuningRule::Kind::fixed, 0.0}, std::nullopt};
  s.area_axis = {10.0, 30.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(scan_area(s, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LadderScanRow)->Arg(8)->Unit(benchmark::kMillisecond);
