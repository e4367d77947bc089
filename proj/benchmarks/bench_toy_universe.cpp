#include <benchmark/benchmark.h>

#include "bievo/toy_universe.hpp"

using namespace bievo;

namespace {

void BM_Evolve(benchmark::State& state) {
  const auto u = ToyUniverse::random(4, 1, 0.05, true);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_evolve(u, steps, false));
}
BENCHMARK(BM_Evolve)->Arg(10)->Arg(100)->Arg(1000);

void BM_EvolveComponents(benchmark::State& state) {
  const auto u = ToyUniverse::random(4, 1, 0.05, true);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_evolve(u, steps, true));
}
BENCHMARK(BM_EvolveComponents)->Arg(10)->Arg(100)->Arg(500);

void BM_EnumerateS(benchmark::State& state) {
  const auto u = ToyUniverse::random(2, 2, 0.1);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_S(u, k, k));
}
BENCHMARK(BM_EnumerateS)->Arg(3)->Arg(5)->Arg(7);

void BM_SpectralS(benchmark::State& state) {
  const auto u = ToyUniverse::random(4, 3, 0.1);
  const auto spectrum = commutator_spectrum(u);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_S(u, spectrum, 40, 40));
}
BENCHMARK(BM_SpectralS);

}  // namespace
