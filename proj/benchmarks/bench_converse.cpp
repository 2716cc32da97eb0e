#include <benchmark/benchmark.h>

#include "wmr/converse.hpp"

static void BM_Structured(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::minimize_masses_structured(K, K / 2, wmr::Rational(5, 2), 6));
  }
}
BENCHMARK(BM_Structured)->Arg(8)->Arg(50);

static void BM_BruteForce(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::minimize_masses_bruteforce(K, K / 2, wmr::Rational(5, 2), 6));
  }
}
BENCHMARK(BM_BruteForce)->Arg(4)->Arg(6)->Arg(8);

static void BM_ConvexityAudit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::convexity_audit(50));
  }
}
BENCHMARK(BM_ConvexityAudit)->Unit(benchmark::kMillisecond);

static void BM_AggregatedCutCounts(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto fa = wmr::symmetric_bundle_assignment(K, 2, wmr::to_int64(wmr::binomial(K, 2), "N"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::aggregated_cut_counts(fa, K / 2));
  }
}
BENCHMARK(BM_AggregatedCutCounts)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
