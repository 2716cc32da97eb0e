#include <benchmark/benchmark.h>

#include "wmr/ia_engine.hpp"

namespace {

wmr::ArithmeticMode mode_of(std::int64_t v) {
  return v == 0 ? wmr::ArithmeticMode::modular : wmr::ArithmeticMode::floating;
}

}  // namespace

static void BM_SampleInstance(benchmark::State& state) {
  const auto p = wmr::SystemParams::with_integer_load(4, 2);
  const int eta = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::sample_instance(p, eta, seed++, wmr::ArithmeticMode::modular));
  }
}
BENCHMARK(BM_SampleInstance)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CertifyLambda(benchmark::State& state) {
  const auto p = wmr::SystemParams::with_integer_load(4, 2);
  const auto inst = wmr::sample_instance(p, static_cast<int>(state.range(1)), 1, mode_of(state.range(0)));
  const auto lambda = wmr::build_lambda(inst, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::certify_rank(lambda));
  }
  state.SetLabel(std::to_string(lambda.rows()) + "x" + std::to_string(lambda.cols()));
}
BENCHMARK(BM_CertifyLambda)
    ->ArgsProduct({{0, 1}, {1, 2}})
    ->ArgNames({"float", "eta"})
    ->Unit(benchmark::kMillisecond);

static void BM_RoundTrip(benchmark::State& state) {
  const auto p = wmr::SystemParams::with_integer_load(4, 2);
  const auto inst = wmr::sample_instance(p, 1, 1, mode_of(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmr::shuffle_roundtrip(inst));
  }
}
BENCHMARK(BM_RoundTrip)->Arg(0)->Arg(1)->ArgName("float")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
