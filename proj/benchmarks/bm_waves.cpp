#include <benchmark/benchmark.h>

#include "fieldlab/waves.hpp"

using namespace fieldlab;

static void WeylQuadrature(benchmark::State& state) {
  waves::WeylPacket packet{1.25, 0.1, 1.0, 0.0, +1, static_cast<int>(state.range(0))};
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(waves::weyl_raw(packet, x, 5.0));
    x += 0.01;  // defeat caching of a single evaluation point
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(WeylQuadrature)->RangeMultiplier(2)->Range(16, 512)->Complexity();

static void WeylSnapshot(benchmark::State& state) {
  const waves::WeylPacket packet{1.25, 0.1, 1.0, 0.0, +1, 64};
  const waves::Grid1D grid{-40.0, 50.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(waves::weyl_snapshot(packet, grid, 5.0, 1.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(WeylSnapshot)->RangeMultiplier(4)->Range(256, 4096)->Complexity()->Unit(benchmark::kMillisecond);

static void SlitPattern(benchmark::State& state) {
  const waves::SlitGeometry geometry{1.0, 0.2, 50.0, 100.0};
  const waves::Grid1D screen{-0.5, 0.5, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(waves::slit_pattern(geometry, 2, screen));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SlitPattern)->RangeMultiplier(4)->Range(512, 8192)->Complexity();

static void CompletenessCheck(benchmark::State& state) {
  const waves::Grid1D grid{0.0, 1.0, static_cast<int>(state.range(0))};
  const auto basis = waves::plane_wave_basis(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(waves::completeness_defect(basis));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(CompletenessCheck)->RangeMultiplier(2)->Range(16, 128)->Complexity()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
