#include <benchmark/benchmark.h>

#include "satgen/construct.hpp"
#include "satgen/solver.hpp"

using namespace satgen;

namespace {

std::vector<SatInstance> hard_level(int n, int k, int l) {
  ConstructionParams params;
  params.clause_width = n;
  params.num_vars = k;
  params.num_clauses = l;
  params.instance_count = 50;
  params.seed = 12;
  return construct(params);
}

void BM_SolveDpll(benchmark::State& state) {
  auto instances = hard_level(4, 8, 40);
  for (auto _ : state)
    for (const SatInstance& instance : instances)
      benchmark::DoNotOptimize(solve(instance.formula));
  state.SetItemsProcessed(state.iterations() * instances.size());
}
BENCHMARK(BM_SolveDpll);

void BM_SolveCdcl(benchmark::State& state) {
  auto instances = hard_level(4, 8, 40);
  SolverConfig config;
  config.use_cdcl = true;
  for (auto _ : state)
    for (const SatInstance& instance : instances)
      benchmark::DoNotOptimize(solve(instance.formula, config));
  state.SetItemsProcessed(state.iterations() * instances.size());
}
BENCHMARK(BM_SolveCdcl);

void BM_EnumerateModels(benchmark::State& state) {
  auto instances = hard_level(3, 5, 13);
  for (auto _ : state)
    for (const SatInstance& instance : instances)
      benchmark::DoNotOptimize(enumerate_models(instance.formula, 32));
  state.SetItemsProcessed(state.iterations() * instances.size());
}
BENCHMARK(BM_EnumerateModels);

void BM_Verify(benchmark::State& state) {
  auto instances = hard_level(5, 8, 40);
  for (auto _ : state)
    for (const SatInstance& instance : instances)
      benchmark::DoNotOptimize(verify(instance.formula, instance.hidden_solution));
  state.SetItemsProcessed(state.iterations() * instances.size());
}
BENCHMARK(BM_Verify);

}  // namespace
