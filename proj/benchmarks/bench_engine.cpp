#include <benchmark/benchmark.h>

#include "blockmerge/distribution.hpp"
#include "blockmerge/identities.hpp"
#include "blockmerge/moments.hpp"
#include "blockmerge/weighted_sums.hpp"

namespace bm = blockmerge;

static void BM_ExactMeans(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bm::ExactMeans(n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactMeans)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_ExactMomentTable(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto order = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(bm::exact_moment_table(n, order));
}
BENCHMARK(BM_ExactMomentTable)->Args({40, 4})->Args({40, 8})->Args({80, 4})->Args({80, 8})->Unit(benchmark::kMillisecond);

static void BM_ReferenceMomentTable(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bm::reference_exact_moment_table(n, 4));
}
BENCHMARK(BM_ReferenceMomentTable)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_FloatMomentTable(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto bits = static_cast<mpfr_prec_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(bm::float_moment_table(n, 4, bits));
}
BENCHMARK(BM_FloatMomentTable)->Args({100, 128})->Args({100, 256})->Args({400, 256})->Unit(benchmark::kMillisecond);

static void BM_ExactPmf(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const unsigned m = bm::auto_m_max(n);
  for (auto _ : state) benchmark::DoNotOptimize(bm::exact_pmf(n, m));
  state.counters["m_max"] = m;
}
BENCHMARK(BM_ExactPmf)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_NkMomentIdentity(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bm::nk_moment_identity(n, 8));
}
BENCHMARK(BM_NkMomentIdentity)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_WeightedSweep(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const bm::ExactMeans means(n);
  for (auto _ : state) benchmark::DoNotOptimize(bm::weighted_moment_sweep(n, 4, means));
}
BENCHMARK(BM_WeightedSweep)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);
