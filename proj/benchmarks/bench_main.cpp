#include <benchmark/benchmark.h>

#include "bkm/characters.hpp"
#include "bkm/lie_engine.hpp"
#include "bkm/solver.hpp"
#include "bkm/weights.hpp"

using namespace bkm;

static void BM_EngineFreeRank2(benchmark::State& state) {
  auto a = rank2(2, 1, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(GradedNilpotent::build(a, {static_cast<int>(state.range(0)), 4096, 1}));
}
BENCHMARK(BM_EngineFreeRank2)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_EngineNegativeA3(benchmark::State& state) {
  auto a = negative_type_a(3);
  for (auto _ : state) benchmark::DoNotOptimize(GradedNilpotent::build(a, {static_cast<int>(state.range(0)), 4096, 1}));
}
BENCHMARK(BM_EngineNegativeA3)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_SimpleQuotientRank2(benchmark::State& state) {
  auto a = rank2(1, 1, 1, 1);
  auto g = GradedNilpotent::build(a, {static_cast<int>(state.range(0)), 4096, 1});
  Weight l = weight_from_powers(a, {4, 4});
  for (auto _ : state) {
    VermaModel vm(g, l);
    benchmark::DoNotOptimize(simple_multiplicities(vm));
  }
}
BENCHMARK(BM_SimpleQuotientRank2)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_ClosedRank2Character(benchmark::State& state) {
  auto a = rank2(1, 1, 1, 1);
  auto g = GradedNilpotent::build(a, {static_cast<int>(state.range(0)), 4096, 1});
  Weight l = weight_from_powers(a, {4, 4});
  for (auto _ : state) benchmark::DoNotOptimize(char_simple_rank2(*g, l));
}
BENCHMARK(BM_ClosedRank2Character)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_TheoremA(benchmark::State& state) {
  auto a = negative_type_a(3);
  Weight rho = weyl_vector(a);
  auto holes = simple_holes(a, rho);
  for (auto _ : state) benchmark::DoNotOptimize(thmA_enumerate(a, rho, holes, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TheoremA)->DenseRange(4, 8, 2);

static void BM_EnumerateDn(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_dn(static_cast<std::size_t>(state.range(0)), true));
}
BENCHMARK(BM_EnumerateDn)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_UniquePredicate(benchmark::State& state) {
  for (auto _ : state)
    for (long m1 = 1; m1 <= 60; ++m1)
      for (long m2 = m1; m2 <= 60; ++m2) benchmark::DoNotOptimize(unique_solution_predicate(m1, m2));
}
BENCHMARK(BM_UniquePredicate);
BENCHMARK_MAIN();
