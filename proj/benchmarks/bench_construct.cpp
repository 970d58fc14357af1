#include <benchmark/benchmark.h>

#include "satgen/construct.hpp"

using namespace satgen;

namespace {

ConstructionParams params_for(int n, int k, int l, int m, ConstructionMode mode) {
  ConstructionParams params;
  params.clause_width = n;
  params.num_vars = k;
  params.num_clauses = l;
  params.instance_count = m;
  params.seed = 7;
  params.mode = mode;
  return params;
}

void BM_ConstructDirect(benchmark::State& state) {
  int l = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto instances = construct(params_for(3, 5, l, 100, ConstructionMode::direct));
    benchmark::DoNotOptimize(instances);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ConstructDirect)->Arg(5)->Arg(13)->Arg(15)->Arg(50);

void BM_ConstructHardLevel(benchmark::State& state) {
  for (auto _ : state) {
    auto instances = construct(params_for(5, 8, 40, 100, ConstructionMode::direct));
    benchmark::DoNotOptimize(instances);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ConstructHardLevel);

void BM_ConstructPooled(benchmark::State& state) {
  for (auto _ : state) {
    auto instances = construct(params_for(3, 5, 5, 100, ConstructionMode::pooled));
    benchmark::DoNotOptimize(instances);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ConstructPooled);

void BM_SampleSatisfyingClause(benchmark::State& state) {
  Rng rng(3);
  Assignment solution = Assignment::from_string("10110101");
  for (auto _ : state) {
    Clause clause = sample_satisfying_clause(solution, 4, 8, rng);
    benchmark::DoNotOptimize(clause);
  }
}
BENCHMARK(BM_SampleSatisfyingClause);

}  // namespace
