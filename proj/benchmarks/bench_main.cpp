#include <benchmark/benchmark.h>

#include <radbcs/radbcs.hpp>

namespace {

using namespace radbcs;

const PotentialSpec kSpec = PotentialSpec::gaussian(2.0, 1.0, 2);

void BM_AssembleSector(benchmark::State& state) {
  const auto grid = build_grid(default_p_max(1.0), static_cast<int>(state.range(0)), 1.0, 2);
  for (auto _ : state) {
    auto k = assemble_sector_kernel(kSpec, 2, grid);
    benchmark::DoNotOptimize(k.matrix().data());
  }
}
BENCHMARK(BM_AssembleSector)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_CriticalTemperature(benchmark::State& state) {
  const auto grid = build_grid(default_p_max(1.0), static_cast<int>(state.range(0)), 1.0, 2);
  const auto kernel = assemble_sector_kernel(kSpec, 0, grid);
  for (auto _ : state) benchmark::DoNotOptimize(critical_temperature_sector(kernel, 1.0));
}
BENCHMARK(BM_CriticalTemperature)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SolveGap(benchmark::State& state) {
  const auto grid = build_grid(default_p_max(1.0), static_cast<int>(state.range(0)), 1.0, 2);
  const auto kernel = assemble_sector_kernel(kSpec, 0, grid);
  const double tc = critical_temperature_sector(kernel, 1.0);
  for (auto _ : state) {
    auto gap = solve_gap(kernel, {1.0, 0.8 * tc});
    benchmark::DoNotOptimize(gap.residual);
  }
}
BENCHMARK(BM_SolveGap)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
