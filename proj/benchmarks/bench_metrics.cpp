#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "satgen/difficulty.hpp"
#include "satgen/evaluate.hpp"
#include "satgen/rng.hpp"

using namespace satgen;

namespace {

void BM_DifficultyScore(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(difficulty_score({4, 8, 40}));
}
BENCHMARK(BM_DifficultyScore);

void BM_PassAtK(benchmark::State& state) {
  for (auto _ : state)
    for (int c = 0; c <= 12; ++c)
      for (int k : {1, 3, 5, 7, 10})
        benchmark::DoNotOptimize(pass_at_k(12, c, k));
}
BENCHMARK(BM_PassAtK);

void BM_FitLinear(benchmark::State& state) {
  Rng rng(5);
  std::vector<std::pair<double, double>> points;
  for (int i = 0; i < 1000; ++i)
    points.emplace_back(rng.unit() * 10.0, rng.unit());
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_linear(points));
  state.SetItemsProcessed(state.iterations() * points.size());
}
BENCHMARK(BM_FitLinear);

}  // namespace

BENCHMARK_MAIN();
