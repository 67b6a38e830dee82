// SPDX-License-Identifier: Apache-2.0
// Microbenchmarks for the hot paths: Haar sampling, partial traces, fidelity,
// typical-set enumeration, and a full merging trial.
#include <benchmark/benchmark.h>

#include "qsm/qsm.hpp"

using qsm::Index;
using qsm::RandomStream;
using qsm::SubsystemLayout;

static void BM_HaarUnitary(benchmark::State& state) {
  const Index d = state.range(0);
  RandomStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(qsm::haar_unitary(d, rng));
  state.SetComplexityN(d);
}
BENCHMARK(BM_HaarUnitary)->Arg(8)->Arg(32)->Arg(64)->Complexity();

static void BM_ReducedDensity(benchmark::State& state) {
  const Index d = state.range(0);
  RandomStream rng(2);
  qsm::PureState psi = qsm::haar_state(SubsystemLayout{{"A", d}, {"B", d}, {"R", 2}}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qsm::reduced_density(psi, {"A", "R"}));
}
BENCHMARK(BM_ReducedDensity)->Arg(4)->Arg(8)->Arg(16);

static void BM_Fidelity(benchmark::State& state) {
  const Index d = state.range(0);
  RandomStream rng(3);
  SubsystemLayout lay{{"X", d}};
  qsm::DensityOperator a = qsm::random_density(lay, d / 2, rng);
  qsm::DensityOperator b = qsm::random_density(lay, d / 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qsm::fidelity(a, b));
}
BENCHMARK(BM_Fidelity)->Arg(8)->Arg(16)->Arg(32);

static void BM_TwirlSample(benchmark::State& state) {
  const Index d = state.range(0);
  RandomStream rng(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(qsm::twirl_monte_carlo(d, d / 2, 10, rng));
}
BENCHMARK(BM_TwirlSample)->Arg(2)->Arg(4);

static void BM_TypicalProjector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsm::RVec p(2);
  p << 0.2, 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(qsm::typical_projector(p, n, 0.1));
}
BENCHMARK(BM_TypicalProjector)->Arg(12)->Arg(16)->Arg(20);

static void BM_MergeTrial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsm::PureState epr = qsm::make_preset("epr", 2, 2, 1, nullptr);
  std::uint64_t seed = 5;
  for (auto _ : state) {
    RandomStream rng(seed++);
    benchmark::DoNotOptimize(qsm::run_merging(epr, n, 2, 1, 1, rng));
  }
}
BENCHMARK(BM_MergeTrial)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
