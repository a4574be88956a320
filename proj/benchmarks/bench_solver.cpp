#include <cmath>

#include <benchmark/benchmark.h>

#include "efx/eps_poly.hpp"
#include "efx/fixtures.hpp"
#include "efx/oracle.hpp"
#include "efx/repro.hpp"
#include "efx/solver.hpp"

namespace {

// Solve a fixed batch of random instances with m goods.
void BM_Solve(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::vector<efx::Instance> batch;
  for (std::uint64_t seed = 1; seed <= 32; ++seed) batch.push_back(efx::random_instance(seed, 3, m, 20));
  std::size_t steps = 0;
  for (auto _ : state) {
    for (const auto& inst : batch) {
      auto result = efx::solve(inst);
      steps += result.trace.size();
      benchmark::DoNotOptimize(result.allocation);
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * batch.size()));
  state.counters["steps/instance"] =
      benchmark::Counter(static_cast<double>(steps) / static_cast<double>(state.iterations() * batch.size()));
}
BENCHMARK(BM_Solve)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SolveNoChecks(benchmark::State& state) {
  const auto inst = efx::random_instance(7, 3, static_cast<std::size_t>(state.range(0)), 20);
  efx::SolveOptions options;
  options.check_invariants = false;
  for (auto _ : state) benchmark::DoNotOptimize(efx::solve(inst, options));
}
BENCHMARK(BM_SolveNoChecks)->Arg(16)->Arg(64);

void BM_OracleEnumerate(benchmark::State& state) {
  const auto inst = efx::random_instance(3, 3, static_cast<std::size_t>(state.range(0)), 20);
  for (auto _ : state) benchmark::DoNotOptimize(efx::enumerate_efx(inst));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(std::pow(3, state.range(0))));
}
BENCHMARK(BM_OracleEnumerate)->DenseRange(6, 10, 2);

void BM_ReproTable1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(efx::repro_table1().pass());
}
BENCHMARK(BM_ReproTable1);

void BM_ReproTable2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(efx::repro_table2().pass());
}
BENCHMARK(BM_ReproTable2);

}  // namespace

BENCHMARK_MAIN();
