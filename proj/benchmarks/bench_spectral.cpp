#include <benchmark/benchmark.h>

#include "aro/adiabatic.hpp"
#include "aro/spectral.hpp"

using namespace aro;

static void BM_DressedSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_ladder(n, n, 5.0, 5.0, 0.0, PulseSpec::default_gaussian(10.0));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dressed_spectrum(h, t));
    t = t < 10.0 ? t + 0.01 : 0.0;
  }
}
BENCHMARK(BM_DressedSpectrum)->Arg(1)->Arg(3)->Arg(5)->Arg(9);

static void BM_TrackBranches(benchmark::State& state) {
  const auto h = build_ladder(5, 5, 5.0, 5.0, 0.0, PulseSpec::default_gaussian(10.0));
  const TimeGrid grid(0.0, 10.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(track_branches(h, grid, StateVector::basis(10, 2)));
}
BENCHMARK(BM_TrackBranches)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_SymmetricArea(benchmark::State& state) {
  const auto pulse = PulseSpec::default_gaussian(50.0);
  const TimeGrid grid(0.0, 10.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(area_symmetric_tripod(5.0, pulse, grid));
}
BENCHMARK(BM_SymmetricArea)->Arg(4000)->Arg(20000);
