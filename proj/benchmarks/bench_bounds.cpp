#include <benchmark/benchmark.h>

#include "wmr/bounds.hpp"

static void BM_BoundCurves(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::bound_curves(K, wmr::Rational(1, 20)));
  }
}
BENCHMARK(BM_BoundCurves)->Arg(11)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_DeltaLb(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const wmr::Rational r(7, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::delta_lb(K, r));
  }
}
BENCHMARK(BM_DeltaLb)->Arg(12)->Arg(50);

static void BM_CorollaryChecks(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::corollary_checks(20));
  }
}
BENCHMARK(BM_CorollaryChecks)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
