#include <benchmark/benchmark.h>

#include <numbers>

#include "fieldlab/decoherence.hpp"
#include "fieldlab/experiments.hpp"
#include "fieldlab/oracle.hpp"

using namespace fieldlab;

static void EprTable(benchmark::State& state) {
  const auto singlet = experiments::EprState::singlet();
  double alpha = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        experiments::epr_coincidence_table(singlet, std::nullopt, alpha, 0.7));
    alpha += 1e-3;
  }
}
BENCHMARK(EprTable);

static void ChshStatistic(benchmark::State& state) {
  const auto singlet = experiments::EprState::singlet();
  const experiments::BellConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(experiments::chsh(singlet, config));
  }
}
BENCHMARK(ChshStatistic);

static void BellSweep(benchmark::State& state) {
  const auto singlet = experiments::EprState::singlet();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        sum += experiments::bell_correlation(singlet, 2 * std::numbers::pi * i / n,
                                             2 * std::numbers::pi * j / n);
      }
    }
    benchmark::DoNotOptimize(sum);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BellSweep)->DenseRange(5, 20, 5)->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);

static void MeasureWithChain(benchmark::State& state) {
  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = density::DensityMatrix::pure({"1", "2"}, amp);
  const int n = static_cast<int>(state.range(0));
  const auto env = decoherence::EnvironmentModel::uniform(0.9, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decoherence::measure_with_chain(system, env));
  }
  state.SetComplexityN(n);
}
BENCHMARK(MeasureWithChain)->RangeMultiplier(4)->Range(1, 256)->Complexity();

static void EnvironmentTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::environment_traced_pointer(0.5, 0.5, 0.0, 0.6, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(EnvironmentTrace)->DenseRange(2, 10, 2)->Complexity()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
