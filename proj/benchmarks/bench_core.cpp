#include "dipent/analytic.hpp"
#include "dipent/hamiltonian.hpp"
#include "dipent/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace dipent;

static void BM_Eigensystem(benchmark::State& state) {
  const auto h = dipolar_hamiltonian(build_chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigensystem(h));
}
BENCHMARK(BM_Eigensystem)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_GibbsState(benchmark::State& state) {
  const auto eig = hermitian_eigensystem(dipolar_hamiltonian(build_circle(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(gibbs_state(eig, -2.0));
}
BENCHMARK(BM_GibbsState)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Concurrence(benchmark::State& state) {
  const auto rho = gibbs_state(dipolar_hamiltonian(build_chain(2)), -1.5);
  const auto pair = partial_trace_pair(rho, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(pair));
}
BENCHMARK(BM_Concurrence);

static void BM_ReducedCurvePoint(benchmark::State& state) {
  const auto eig = hermitian_eigensystem(dipolar_hamiltonian(build_chain(8)));
  const ThermalPairConcurrence curve(eig, {2, 3});
  double beta = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curve.at(beta));
    beta = beta < 3.0 ? beta + 0.01 : -3.0;
  }
}
BENCHMARK(BM_ReducedCurvePoint);

static void BM_CriticalBeta(benchmark::State& state) {
  const auto cluster = build_chain(2);
  for (auto _ : state) benchmark::DoNotOptimize(critical_beta(cluster, 1.0, {1, 2}, BetaSide::negative));
}
BENCHMARK(BM_CriticalBeta);

static void BM_Figure4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(figure_data(4, {1}));
}
BENCHMARK(BM_Figure4)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
