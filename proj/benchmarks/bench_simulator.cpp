#include <benchmark/benchmark.h>

#include "blockmerge/simulator.hpp"

namespace bm = blockmerge;

static void BM_ChainRun(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const bm::ChainSampler sampler(n);
  bm::Rng rng(1);
  std::uint64_t steps = 0;
  for (auto _ : state) steps += sampler.run(n, rng);
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ChainRun)->Arg(10)->Arg(1000)->Arg(10000);

static void BM_FullRun(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  bm::Rng rng(1);
  std::vector<unsigned> perm, scratch;
  for (auto _ : state) benchmark::DoNotOptimize(bm::simulate_once_full(n, rng, perm, scratch));
}
BENCHMARK(BM_FullRun)->Arg(10)->Arg(100)->Arg(1000);

static void BM_ParallelRun(benchmark::State& state) {
  bm::SimConfig cfg;
  cfg.n = 100;
  cfg.samples = 100000;
  cfg.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bm::run(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.samples));
}
BENCHMARK(BM_ParallelRun)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
