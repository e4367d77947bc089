#include <benchmark/benchmark.h>

#include "bievo/interference.hpp"

using namespace bievo;

namespace {

void BM_Product(benchmark::State& state) {
  const PathCount pc(8000, state.range(0));
  double z = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(interference_product(pc, PhaseArg(z)));
    z += 1e-7;
  }
}
BENCHMARK(BM_Product)->Arg(1)->Arg(10)->Arg(50)->Arg(4000);

void BM_ProductNearSingular(benchmark::State& state) {
  const PathCount pc(8000, 50);
  const PhaseArg z(2.0 * 3.141592653589793 / 25.0);
  for (auto _ : state) benchmark::DoNotOptimize(interference_product(pc, z));
}
BENCHMARK(BM_ProductNearSingular);

void BM_Recurrence(benchmark::State& state) {
  const PathCount pc(8000, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interference_qrecursion_log(pc, PhaseArg(0.001)));
}
BENCHMARK(BM_Recurrence)->Arg(1)->Arg(10)->Arg(50);

void BM_SumOracle(benchmark::State& state) {
  const PathCount pc(20, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interference_sum_oracle(pc, PhaseArg(0.7)));
}
BENCHMARK(BM_SumOracle)->Arg(2)->Arg(4)->Arg(6);

void BM_Rescaled(benchmark::State& state) {
  const PathCount pc(state.range(0), 10);
  for (auto _ : state) benchmark::DoNotOptimize(rescaled_interference(pc, 9.5));
}
BENCHMARK(BM_Rescaled)->Arg(500)->Arg(4000);

}  // namespace
