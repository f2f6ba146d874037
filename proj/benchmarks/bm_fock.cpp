#include <benchmark/benchmark.h>

#include <random>

#include "fieldlab/dense.hpp"
#include "fieldlab/fock.hpp"

using namespace fieldlab;
using fock::ModeId;
using fock::ModeSet;
using fock::OpKind;
using fock::OpString;

static fock::Ket dense_superposition(const ModeSet& set, std::mt19937_64& rng) {
  const auto basis = fock::enumerate_basis(set);
  std::normal_distribution<double> gauss(0.0, 1.0);
  fock::Ket ket(set);
  for (const auto& state : basis) ket.accumulate(state, {gauss(rng), gauss(rng)});
  return ket.normalized();
}

static void ApplyNumberOperator(benchmark::State& state) {
  const auto n_modes = static_cast<std::size_t>(state.range(0));
  const auto set = ModeSet::fermionic(n_modes);
  std::mt19937_64 rng(1);
  const auto ket = dense_superposition(set, rng);
  fock::OpSum number;
  for (std::uint32_t m = 0; m < n_modes; ++m) {
    number += OpString::create(ModeId{m}) * OpString::annihilate(ModeId{m});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fock::apply(number, ket));
  }
  state.SetComplexityN(static_cast<std::int64_t>(set.dimension()));
}
BENCHMARK(ApplyNumberOperator)->DenseRange(4, 10, 2)->Complexity();

static void DenseOperatorBuild(benchmark::State& state) {
  const auto set = ModeSet::fermionic(static_cast<std::size_t>(state.range(0)));
  const fock::FockBasis basis(set);
  const OpString hop = OpString::create(ModeId{0}) * OpString::annihilate(ModeId{1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(fock::dense_operator(basis, hop));
  }
  state.SetComplexityN(static_cast<std::int64_t>(basis.size()));
}
BENCHMARK(DenseOperatorBuild)->DenseRange(4, 8, 2)->Complexity();

static void AnticommutatorSweep(benchmark::State& state) {
  const auto n_modes = static_cast<std::size_t>(state.range(0));
  const auto set = ModeSet::fermionic(n_modes);
  for (auto _ : state) {
    double defect = 0.0;
    for (std::uint32_t a = 0; a < n_modes; ++a) {
      for (std::uint32_t b = 0; b < n_modes; ++b) {
        defect += fock::canonical_algebra_defect(set, {ModeId{a}, OpKind::annihilate},
                                                 {ModeId{b}, OpKind::create});
      }
    }
    benchmark::DoNotOptimize(defect);
  }
}
BENCHMARK(AnticommutatorSweep)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
