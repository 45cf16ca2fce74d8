#include <benchmark/benchmark.h>

#include "cwglt/cw_analysis.hpp"
#include "cwglt/eigen.hpp"
#include "cwglt/symbols.hpp"

using namespace cwglt;

namespace {

const ModelParams kParams{1.0, 1.0};

void BM_TridiagonalQl(benchmark::State& state) {
  const auto m = cw_restricted(static_cast<int>(state.range(0)), kParams);
  for (auto _ : state) benchmark::DoNotOptimize(tridiag_eigenvalues(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalQl)->RangeMultiplier(2)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_Bisection(benchmark::State& state) {
  const auto m = cw_restricted(static_cast<int>(state.range(0)), kParams);
  for (auto _ : state) benchmark::DoNotOptimize(bisection_eigenvalues(m));
}
BENCHMARK(BM_Bisection)->RangeMultiplier(4)->Range(64, 1024);

// Every spin sector of the full model; work grows like N^3.
void BM_FullSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(full_cw_spectrum(n, kParams));
}
BENCHMARK(BM_FullSpectrum)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMillisecond);

void BM_DenseHouseholder(benchmark::State& state) {
  const auto m = dense_cw_oracle(static_cast<int>(state.range(0)), kParams);
  for (auto _ : state) benchmark::DoNotOptimize(dense_sym_eigenvalues(m));
}
BENCHMARK(BM_DenseHouseholder)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_SymbolRearrangement(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto sym = cw_symbol(kParams);
  for (auto _ : state) benchmark::DoNotOptimize(rearrangement(sample_grid(sym, g, g), g, g));
}
BENCHMARK(BM_SymbolRearrangement)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
