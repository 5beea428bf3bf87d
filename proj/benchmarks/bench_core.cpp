#include <benchmark/benchmark.h>

#include "ddcap/channel.hpp"
#include "ddcap/min_phase.hpp"
#include "ddcap/zeros.hpp"

namespace {

using namespace ddcap;

void BM_FindZeros(benchmark::State& state) {
  const auto spec = samples_to_spectrum(random_signal(static_cast<std::size_t>(state.range(0)), 1.0, 11));
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros(spec));
}
BENCHMARK(BM_FindZeros)->RangeMultiplier(2)->Range(4, 64);

void BM_EnumerateFamily(benchmark::State& state) {
  const auto sig = random_signal(static_cast<std::size_t>(state.range(0)), 1.0, 12);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_family(sig));
}
BENCHMARK(BM_EnumerateFamily)->DenseRange(4, 12, 4);

void BM_MinPhaseFromIntensity(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  const auto intensity = intensity_grid(random_signal(M, 1.0, 13), 4);
  for (auto _ : state) benchmark::DoNotOptimize(min_phase_from_intensity(intensity, M));
}
BENCHMARK(BM_MinPhaseFromIntensity)->RangeMultiplier(2)->Range(4, 64);

void BM_MonteCarloCoherent(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_mi(Receiver::coherent, {}, {10.0, 3}, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_MonteCarloCoherent)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MonteCarloIntensity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mc_mi(Receiver::intensity, {}, {10.0, 3}, 10000));
}
BENCHMARK(BM_MonteCarloIntensity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
