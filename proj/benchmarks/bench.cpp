#include <benchmark/benchmark.h>

#include "mc/mc.hpp"

namespace {

void BM_EvalDagPipeline(benchmark::State& state) {
  const mc::Dag d = mc::Dag::compile(mc::build_clock_sync_pipeline(4, 1, 2));
  const auto x = mc::TernaryWord::parse("1M0110111000");
  std::vector<mc::Ternary> nodes;
  mc::TernaryWord out;
  for (auto _ : state) {
    d.eval_into(x, nodes, out);
    benchmark::DoNotOptimize(out);
  }
  state.counters["gates"] = static_cast<double>(d.gate_count());
}
BENCHMARK(BM_EvalDagPipeline);

void BM_ReachFanout(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const mc::Executor ex(mc::build_fanout_buffer(r));
  const auto m = mc::TernaryWord::parse("M");
  for (auto _ : state) benchmark::DoNotOptimize(ex.reach(m, r));
}
BENCHMARK(BM_ReachFanout)->DenseRange(2, 8, 2);

void BM_ImplementsFanout(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const mc::Executor ex(mc::build_fanout_buffer(r));
  const auto spec = mc::fanout_spec(r);
  for (auto _ : state) benchmark::DoNotOptimize(ex.implements(r, spec));
}
BENCHMARK(BM_ImplementsFanout)->DenseRange(2, 6, 2);

void BM_SynthesizeTwoSort(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc::build_two_sort(k));
}
BENCHMARK(BM_SynthesizeTwoSort)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ClockSyncSelect(benchmark::State& state) {
  std::vector<mc::TernaryWord> readings;
  for (std::size_t v : {1, 2, 3, 0}) readings.push_back(mc::tdc_reading(3, v, v == 1));
  for (auto _ : state) benchmark::DoNotOptimize(mc::clock_sync_select(4, 1, readings));
}
BENCHMARK(BM_ClockSyncSelect)->Unit(benchmark::kMillisecond);

void BM_NaturalSubfunction(benchmark::State& state) {
  const auto g = mc::cmux_spec();
  for (auto _ : state) benchmark::DoNotOptimize(mc::find_natural_subfunction(g));
}
BENCHMARK(BM_NaturalSubfunction);

}  // namespace
BENCHMARK_MAIN();
