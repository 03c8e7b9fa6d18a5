#include <benchmark/benchmark.h>

#include "strainlab/diagnostics.hpp"
#include "strainlab/initial_data.hpp"
#include "strainlab/nonlinearity.hpp"
#include "strainlab/solver.hpp"
#include "strainlab/transform.hpp"

using namespace strainlab;

static void BM_TensorRoundTrip(benchmark::State& state) {
  const Grid3 g(static_cast<int>(state.range(0)));
  const auto s = random_strain(g, 1, g.cutoff());
  for (auto _ : state) benchmark::DoNotOptimize(from_physical(to_physical(s)));
}
BENCHMARK(BM_TensorRoundTrip)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_MuRhs(benchmark::State& state) {
  const Grid3 g(static_cast<int>(state.range(0)));
  const auto s = random_strain(g, 2, g.cutoff());
  for (auto _ : state) benchmark::DoNotOptimize(mu_rhs(s, 1.0, state.range(1) != 0));
}
BENCHMARK(BM_MuRhs)->Args({32, 0})->Args({32, 1})->Args({64, 0})->Unit(benchmark::kMillisecond);

static void BM_Step(benchmark::State& state) {
  SimConfig cfg;
  cfg.grid_n = static_cast<int>(state.range(0));
  cfg.dt = 1e-3;
  const auto s = random_strain(cfg.grid(), 3, cfg.grid().cutoff());
  for (auto _ : state) benchmark::DoNotOptimize(if_rk4_step(s, 1e-3, cfg));
}
BENCHMARK(BM_Step)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_FullRecord(benchmark::State& state) {
  const Grid3 g(32);
  const auto s = random_strain(g, 4, 8);
  DiagnosticsConfig dc;
  for (auto _ : state) benchmark::DoNotOptimize(compute_record(s, 0.0, 0, dc));
}
BENCHMARK(BM_FullRecord)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
