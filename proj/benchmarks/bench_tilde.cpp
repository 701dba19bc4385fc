#include <benchmark/benchmark.h>

#include "dtmwb/cover.hpp"
#include "dtmwb/decompositions.hpp"
#include "dtmwb/instances.hpp"
#include "dtmwb/transforms.hpp"

using namespace dtmwb;

namespace {

// Cover infimum of X on a fresh solver; state.range(0) is the resolution.
void BM_TildeAarnes(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  auto g = make_grid_space(k);
  for (auto _ : state) {
    SetFunction a = aarnes_qm(g, default_aarnes_marks(k));
    benchmark::DoNotOptimize(tilde(a, g->universe()).total);
  }
}
BENCHMARK(BM_TildeAarnes)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_TildeMixture(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  auto g = make_grid_space(k);
  for (auto _ : state) {
    Instance in = make_instance(g, "mix:1/2*lebesgue+1/2*aarnes");
    benchmark::DoNotOptimize(tilde(in.fn, g->universe()).total);
  }
}
BENCHMARK(BM_TildeMixture)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_PackingSigned(benchmark::State& state) {
  auto g = make_grid_space(2);
  for (auto _ : state) {
    Instance in = make_instance(g, "signed:lebesgue-aarnes");
    PackingSolver solver(in.fn);
    benchmark::DoNotOptimize(solver.solve(g->universe()).total);
  }
}
BENCHMARK(BM_PackingSigned)->Unit(benchmark::kMillisecond);

void BM_DecomposeMixture(benchmark::State& state) {
  auto g = make_grid_space(3);
  for (auto _ : state) {
    Instance in = make_instance(g, "mix:1/2*lebesgue+1/2*aarnes");
    benchmark::DoNotOptimize(decompose_proper(in.fn).radon.open(g->universe()));
  }
}
BENCHMARK(BM_DecomposeMixture)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_IsProperAarnesK4(benchmark::State& state) {
  auto g = make_grid_space(4);
  for (auto _ : state) {
    SetFunction a = aarnes_qm(g, default_aarnes_marks(4));
    benchmark::DoNotOptimize(is_proper(a).proper);
  }
}
BENCHMARK(BM_IsProperAarnesK4)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
