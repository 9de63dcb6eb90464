#include <benchmark/benchmark.h>

#include "mschmidt/mschmidt.hpp"

using namespace mschmidt;

static void BM_Reduce(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const PureState s = random_pure(DimensionProfile(std::vector<int>(static_cast<std::size_t>(m), 2)), 1);
  const SubsystemSet keep = SubsystemSet::of({1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(reduce(s, keep));
}
BENCHMARK(BM_Reduce)->DenseRange(3, 8);

static void BM_PureSchmidtW(benchmark::State& state) {
  const PureState s = w_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pure_schmidt_number(s));
}
BENCHMARK(BM_PureSchmidtW)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_PureSchmidtGhz(benchmark::State& state) {
  const PureState s = ghz_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pure_schmidt_number(s));
}
BENCHMARK(BM_PureSchmidtGhz)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_PureSchmidtRandom3Qubit(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pure_schmidt_number(random_pure({2, 2, 2}, seed++)));
}
BENCHMARK(BM_PureSchmidtRandom3Qubit)->Unit(benchmark::kMillisecond);

static void BM_EnsembleSearchSeparableMixture(benchmark::State& state) {
  const DimensionProfile profile{2, 2, 2};
  const PureState a = random_product(profile, 1), b = random_product(profile, 2);
  const DensityMatrix rho(profile, 0.5 * a.projector() + 0.5 * b.projector());
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_search(rho, 1));
}
BENCHMARK(BM_EnsembleSearchSeparableMixture)->Unit(benchmark::kMillisecond);

static void BM_CoefficientsW3(benchmark::State& state) {
  const PureState s = w_state(3);
  for (auto _ : state) benchmark::DoNotOptimize(pure_schmidt_coefficients(s));
}
BENCHMARK(BM_CoefficientsW3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
