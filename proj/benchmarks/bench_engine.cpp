#include <benchmark/benchmark.h>

#include "minkgauss/analyzer.hpp"
#include "minkgauss/catalog.hpp"
#include "minkgauss/frame.hpp"
#include "minkgauss/jet.hpp"

namespace mg = minkgauss;

namespace {

const mg::SurfaceDef& generic() {
  static const mg::SurfaceDef s = mg::catalog_surface("null-translation");
  return s;
}

void BM_JetMultiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const mg::ParamPoint p{0.3, -0.2};
  const mg::Jet a = mg::sin(mg::Jet::variable(mg::Var::s, p, order));
  const mg::Jet b = mg::exp(mg::Jet::variable(mg::Var::t, p, order));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_JetMultiply)->DenseRange(3, 8, 1);

void BM_BuildFrame(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mg::build_frame(generic(), {0.3, -0.2}));
  }
}
BENCHMARK(BM_BuildFrame);

void BM_SamplePoint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mg::sample_point(generic(), {0.3, -0.2}));
  }
}
BENCHMARK(BM_SamplePoint);

void BM_AnalyzeGrid(benchmark::State& state) {
  mg::GridSpec grid;
  grid.n_s = grid.n_t = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mg::analyze(generic(), grid, 1));
  }
  state.SetItemsProcessed(state.iterations() * grid.n_s * grid.n_t);
}
BENCHMARK(BM_AnalyzeGrid)->Arg(9)->Arg(17)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
