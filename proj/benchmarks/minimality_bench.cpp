#include <benchmark/benchmark.h>

#include <random>

#include "smsccl/symmetry/minimality.hpp"

using namespace smsccl;

namespace {

std::vector<graph::PartialGraph> randomGraphs(int n, double p, double definedFraction, int count) {
  std::mt19937_64 rng(static_cast<uint64_t>(n) * 1000 + count);
  std::bernoulli_distribution edge(p);
  std::bernoulli_distribution defined(definedFraction);
  std::vector<graph::PartialGraph> out;
  for (int i = 0; i < count; ++i) {
    graph::PartialGraph g(n);
    for (int u = 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        if (defined(rng)) g.set(u, v, edge(rng) ? graph::CellState::Present : graph::CellState::Absent);
      }
    }
    out.push_back(g);
  }
  return out;
}

void BM_CheckMinimalFull(benchmark::State& state) {
  const auto graphs = randomGraphs(static_cast<int>(state.range(0)), 0.3, 1.0, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(symmetry::checkMinimal(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_CheckMinimalFull)->DenseRange(8, 20, 4);

void BM_CheckMinimalPartialBudget(benchmark::State& state) {
  const auto graphs = randomGraphs(static_cast<int>(state.range(0)), 0.3, 0.5, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(symmetry::checkMinimal(graphs[i++ % graphs.size()], 3000));
}
BENCHMARK(BM_CheckMinimalPartialBudget)->DenseRange(8, 20, 4);

// Vertex-transitive inputs are the worst case for the relabeling search.
void BM_CheckMinimalCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  graph::PartialGraph g = graph::PartialGraph::empty(n);
  for (int v = 1; v <= n; ++v) g.addEdge(v, v % n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(symmetry::checkMinimal(g));
}
BENCHMARK(BM_CheckMinimalCycle)->DenseRange(8, 20, 4);

}  // namespace
