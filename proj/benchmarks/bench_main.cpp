#include <wsnacc/accuracy.hpp>
#include <wsnacc/clustering.hpp>
#include <wsnacc/field.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace wsnacc;

static void BM_ClusterField(benchmark::State &state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Field field = deploy_random(m, 100.0, 100.0, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(cluster_field(field, 23.5432));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClusterField)->RangeMultiplier(2)->Range(30, 480)->Complexity();

static void BM_DataAccuracy(benchmark::State &state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Field field = deploy_random(m, 100.0, 100.0, 2);
  const auto ids = field.ids();
  const auto params = CorrelationParams::make(70.0, 1.0);
  const auto model = build_covariance(field, ids, {50.0, 50.0}, params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(data_accuracy(model));
    benchmark::DoNotOptimize(info_accuracy(model));
  }
}
BENCHMARK(BM_DataAccuracy)->RangeMultiplier(2)->Range(4, 128);

static void BM_MonteCarloStream(benchmark::State &state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Field field = deploy_random(m, 100.0, 100.0, 3);
  const auto ids = field.ids();
  const auto params = CorrelationParams::make(70.0, 1.0);
  const auto model = build_covariance(field, ids, {50.0, 50.0}, params);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_stream(model, 1.0, 100000, 7));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_MonteCarloStream)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
