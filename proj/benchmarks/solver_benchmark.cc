// Copyright 2026 The Carpool Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "carpool/dist_sim.h"
#include "carpool/dual_solver.h"
#include "carpool/edge_graph.h"
#include "carpool/instances.h"
#include "carpool/shortest_path.h"

namespace carpool {
namespace {

Instance Geometric(double side, int sessions) {
  GeometricConfig cfg;
  cfg.side = side;
  cfg.num_sessions = sessions;
  cfg.seed = 1;
  return GenerateGeometric(cfg);
}

void BM_PrimalSubproblem(benchmark::State& state) {
  const Instance inst = Geometric(static_cast<double>(state.range(0)), 4);
  const ExpandedGraph graph = BuildExpandedGraph(inst);
  const TripleIndex index(graph);
  const EdgeGraph edges(graph, index);
  const PriceVector prices = InitPrices(graph, index, SolverConfig{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolvePrimalSubproblem(graph, index, edges, prices));
  }
  state.counters["triples"] = static_cast<double>(index.size());
}
BENCHMARK(BM_PrimalSubproblem)->Arg(4)->Arg(6)->Arg(10);

void BM_SolveBuiltin(benchmark::State& state, const char* name, double tol) {
  const Instance inst = BuiltinInstance(name);
  SolverConfig cfg;
  cfg.rel_gap_tolerance = tol;
  int iterations = 0;
  for (auto _ : state) {
    const SolveResult r = Solve(inst, cfg);
    iterations = r.solution.iterations;
    benchmark::DoNotOptimize(r.solution.cost);
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK_CAPTURE(BM_SolveBuiltin, grid2, "grid2", 1e-3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveBuiltin, geo27, "geo27", 1e-2)->Unit(benchmark::kMillisecond);

void BM_SolveGeometric(benchmark::State& state) {
  const Instance inst = Geometric(6.0, static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.max_iterations = 1000;
  cfg.rel_gap_tolerance = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(Solve(inst, cfg).solution.cost);
}
BENCHMARK(BM_SolveGeometric)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DistributedIteration(benchmark::State& state) {
  const Instance inst = Geometric(6.0, 4);
  const ExpandedGraph graph = BuildExpandedGraph(inst);
  const TripleIndex index(graph);
  DistributedNetwork network(graph, index, SolverConfig{});
  const SimSchedule schedule =
      state.range(0) == 0 ? SimSchedule::Synchronous() : SimSchedule::Asynchronous(1);
  for (auto _ : state) benchmark::DoNotOptimize(DistributedShortestPaths(network, schedule));
  state.counters["messages/iter"] = benchmark::Counter(
      static_cast<double>(network.stats().sent), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_DistributedIteration)->Arg(0)->Arg(1);

void BM_GenerateGeometric(benchmark::State& state) {
  GeometricConfig cfg;
  cfg.side = static_cast<double>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(GenerateGeometric(cfg));
  }
}
BENCHMARK(BM_GenerateGeometric)->Arg(6)->Arg(12);

}  // namespace
}  // namespace carpool

BENCHMARK_MAIN();
