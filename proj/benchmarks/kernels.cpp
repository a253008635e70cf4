#include <benchmark/benchmark.h>

#include "mhd2d/dynamics.hpp"
#include "mhd2d/initial_data.hpp"
#include "mhd2d/integrator.hpp"
#include "mhd2d/spectral.hpp"

using namespace mhd2d;

namespace {

State bench_state(int n) {
  InitConfig init;
  init.epsilon = 1e-3;
  return make_initial_data(Grid::make(n, n), init, 4.0);
}

void BM_RoundTrip(benchmark::State& st) {
  const GridPtr g = Grid::make(st.range(0), st.range(0));
  const ScalarField f = random_smooth_field(g, 1, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(from_physical(g, to_physical(f)));
  st.SetItemsProcessed(st.iterations());
}

void BM_Product(benchmark::State& st) {
  const GridPtr g = Grid::make(st.range(0), st.range(0));
  const ScalarField f = random_smooth_field(g, 1, 1.0);
  const ScalarField h = random_smooth_field(g, 2, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(product(f, h));
}

void BM_Rhs(benchmark::State& st) {
  const State s = bench_state(st.range(0));
  const PhysParams p;
  for (auto _ : st) benchmark::DoNotOptimize(rhs(s, p));
}

void BM_Step(benchmark::State& st) {
  const State s = bench_state(st.range(0));
  StepConfig cfg;
  cfg.scheme = st.range(1) == 3 ? Scheme::IFRK3 : Scheme::IFRK4;
  cfg.dt = 0.5 * cfl_limit(s, cfg.cfl_safety);
  const PhysParams p;
  for (auto _ : st) benchmark::DoNotOptimize(step(s, p, cfg));
}

}  // namespace

BENCHMARK(BM_RoundTrip)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_Product)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_Rhs)->Arg(64)->Arg(128);
BENCHMARK(BM_Step)->Args({64, 3})->Args({64, 4})->Args({128, 4});

BENCHMARK_MAIN();
