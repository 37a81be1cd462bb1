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

#include <set>

#include <gtest/gtest.h>

#include "carpool/dual_solver.h"
#include "carpool/edge_graph.h"
#include "carpool/errors.h"
#include "carpool/instances.h"
#include "carpool/shortest_path.h"
#include "oracles/oracles.h"
#include "test_util.h"

namespace carpool {
namespace {

using test::Built;

carpool_oracle::PriceFn PriceOf(const Built& b, const PriceVector& p) {
  return [&b, &p](int v, int i, int w) { return p.values[*b.index.Find(v, i, w)]; };
}

TEST(EdgeGraphTest, VerticesArePairsArcsAreTriples) {
  const Built b(BuiltinInstance("grid2"));
  ASSERT_EQ(b.edges.num_vertices(), b.graph.num_pairs());
  ASSERT_EQ(b.edges.num_arcs(), b.index.size());
  for (std::size_t a = 0; a < b.edges.num_arcs(); ++a) {
    const Triple& t = b.index[a];
    EXPECT_EQ(b.edges.vertex(b.edges.tail(a)), std::make_pair(t.from, t.middle));
    EXPECT_EQ(b.edges.vertex(b.edges.head(a)), std::make_pair(t.middle, t.to));
  }
  std::size_t out = 0;
  std::size_t in = 0;
  for (std::size_t v = 0; v < b.edges.num_vertices(); ++v) {
    const auto [begin, end] = b.edges.out_arcs(v);
    for (std::size_t a = begin; a < end; ++a) EXPECT_EQ(b.edges.tail(a), static_cast<int>(v));
    out += end - begin;
    for (int a : b.edges.in_arcs(v)) EXPECT_EQ(b.edges.head(a), static_cast<int>(v));
    in += b.edges.in_arcs(v).size();
  }
  EXPECT_EQ(out, b.edges.num_arcs());
  EXPECT_EQ(in, b.edges.num_arcs());
}

TEST(EdgeGraphTest, SmallGraphsByHand) {
  Instance path = test::Line(3);  // A - R - B, no sessions
  const Built b(path);
  EXPECT_EQ(b.edges.num_vertices(), 4u);
  EXPECT_EQ(b.edges.num_arcs(), 2u);
  std::set<std::pair<int, int>> vertices;
  for (std::size_t v = 0; v < 4; ++v) vertices.insert(b.edges.vertex(v));
  EXPECT_EQ(vertices, (std::set<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}}));

  const Built single(test::Line(2));
  EXPECT_EQ(single.edges.num_vertices(), 2u);
  EXPECT_EQ(single.edges.num_arcs(), 0u);
}

TEST(EdgeGraphTest, SessionEndpoints) {
  const Built b(BuiltinInstance("relay3"));
  const auto& s = b.graph.sessions()[0];
  EXPECT_EQ(b.edges.vertex(b.edges.SourceVertex(s)), std::make_pair(s.art_source, s.source));
  EXPECT_EQ(b.edges.vertex(b.edges.TargetVertex(s)), std::make_pair(s.dest, s.art_dest));
  // The reversed orientation has no way in: it only leaves toward d.
  const int reversed = b.graph.PairIndex(s.art_dest, s.dest);
  EXPECT_TRUE(b.edges.in_arcs(reversed).empty());
}

TEST(ShortestPathTest, MatchesDijkstraOracle) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    GeometricConfig cfg;
    cfg.seed = seed;
    const Built b(GenerateGeometric(cfg));
    for (std::uint32_t draw = 0; draw < 3; ++draw) {
      const PriceVector p = test::RandomFeasiblePrices(b.graph, b.index, draw + 100 * seed);
      for (std::size_t t = 0; t < b.graph.num_sessions(); ++t) {
        const SessionPath path = ShortestPath(b.edges, p, b.graph, t);
        const double oracle = carpool_oracle::DijkstraDistance(b.instance, t, PriceOf(b, p));
        EXPECT_NEAR(path.weight, oracle, 1e-12 * std::max(1.0, oracle)) << "seed " << seed;
        double sum = 0.0;
        for (int a : path.arcs) sum += p.values[a];
        EXPECT_EQ(sum, path.weight);
        EXPECT_EQ(path.vertices.front(), b.edges.SourceVertex(b.graph.sessions()[t]));
        EXPECT_EQ(path.vertices.back(), b.edges.TargetVertex(b.graph.sessions()[t]));
      }
    }
  }
}

TEST(ShortestPathTest, TieBreakMatchesExhaustiveSearch) {
  std::vector<Instance> cases;
  Instance grid = test::Grid(2, 3);
  grid.sessions = {{"a", 0, 5, 1.0}, {"b", 2, 3, 1.0}};
  cases.push_back(grid);
  Instance ring = test::Line(5);
  ring.edges.emplace_back(0, 4);
  ring.edges.emplace_back(1, 3);
  ring.sessions = {{"x", 0, 2, 1.0}, {"y", 4, 1, 2.0}};
  cases.push_back(ring);
  for (const Instance& inst : cases) {
    const Built b(inst);
    for (std::uint32_t draw = 0; draw < 12; ++draw) {
      const PriceVector p = test::RandomFeasiblePrices(b.graph, b.index, draw, /*dyadic=*/true);
      for (std::size_t t = 0; t < b.graph.num_sessions(); ++t) {
        const SessionPath path = ShortestPath(b.edges, p, b.graph, t);
        const auto oracle = carpool_oracle::BruteCanonicalPath(inst, t, PriceOf(b, p));
        ASSERT_EQ(path.vertices.size(), oracle.size()) << "draw " << draw;
        for (std::size_t k = 0; k < oracle.size(); ++k) {
          EXPECT_EQ(b.edges.vertex(path.vertices[k]), oracle[k]) << "draw " << draw;
        }
      }
    }
  }
}

TEST(ShortestPathTest, RelayAtHalfPrices) {
  const Built b(BuiltinInstance("relay3"));
  PriceVector p{std::vector<double>(b.index.size())};
  for (std::size_t k = 0; k < b.index.size(); ++k) p.values[k] = b.graph.cost(b.index[k].middle) / 2;
  const SubproblemResult r = SolvePrimalSubproblem(b.graph, b.index, b.edges, p);
  ASSERT_EQ(r.paths.size(), 2u);
  // s' -> 0 -> 1 -> 2 -> d': three priced hops of 0.5 each.
  EXPECT_EQ(r.paths[0].weight, 1.5);
  EXPECT_EQ(r.paths[0].arcs.size(), 3u);
  EXPECT_EQ(r.q_star, 3.0);
  EXPECT_EQ(DualBound(b.graph, r.paths), 3.0);
  for (std::size_t t = 0; t < 2; ++t) {
    const auto residual = ConservationResidual(r.flows[t], b.graph, b.index);
    for (double x : residual) EXPECT_EQ(x, 0.0);
  }
}

TEST(ShortestPathTest, ZeroPriceRelayWinsAndZeroPricesGiveZeroBound) {
  Instance inst = test::Line(3);  // 0 - 1 - 2 plus a detour 0 - 3 - 4 - 2
  for (int v = 3; v < 5; ++v) inst.nodes.push_back({v, 1.0, std::nullopt});
  inst.edges.insert(inst.edges.end(), {{0, 3}, {3, 4}, {4, 2}});
  inst.sessions = {{"a", 0, 2, 1.0}};
  const Built b(inst);
  PriceVector p = InitPrices(b.graph, b.index, SolverConfig{});
  p.values[*b.index.Find(0, 1, 2)] = 0.0;
  p.values[*b.index.Find(2, 1, 0)] = 1.0;
  const SessionPath path = ShortestPath(b.edges, p, b.graph, 0);
  EXPECT_EQ(b.index[path.arcs[1]].middle, 1);

  const PriceVector zero{std::vector<double>(b.index.size(), 0.0)};
  EXPECT_EQ(SolvePrimalSubproblem(b.graph, b.index, b.edges, zero).q_star, 0.0);
}

TEST(ShortestPathTest, HalfPricesCountPathNodes) {
  // A G-path of h hops has h + 1 transmitting-or-receiving nodes, each the
  // middle of one priced triple.
  for (int n = 2; n <= 6; ++n) {
    Instance inst = test::Line(n);
    inst.sessions = {{"a", 0, n - 1, 2.5}};
    const Built b(inst);
    const PriceVector p = InitPrices(b.graph, b.index, SolverConfig{});
    const SubproblemResult r = SolvePrimalSubproblem(b.graph, b.index, b.edges, p);
    const int hops = n - 1;
    EXPECT_EQ(r.q_star, (hops + 1) / 2.0 * 2.5) << n;
  }
}

TEST(ShortestPathTest, PathToFlowPutsRateOnEveryArc) {
  const Built b(BuiltinInstance("grid2rate"));
  const PriceVector p = test::RandomFeasiblePrices(b.graph, b.index, 9);
  const SessionPath path = ShortestPath(b.edges, p, b.graph, 1);
  const FlowVector f = PathToFlow(path, 4.0, b.index);
  double mass = 0.0;
  for (double x : f.values) mass += x;
  EXPECT_EQ(mass, 4.0 * path.arcs.size());
  for (int a : path.arcs) EXPECT_EQ(f.values[a], 4.0);
}

TEST(ShortestPathTest, UnreachableTargetThrows) {
  const Built b(BuiltinInstance("relay3"));
  ShortestPathTree tree;
  tree.dist.assign(b.edges.num_vertices(), kUnreachable);
  tree.hops.assign(b.edges.num_vertices(), -1);
  tree.pred_arc.assign(b.edges.num_vertices(), -1);
  EXPECT_THROW(ExtractPath(b.edges, tree, b.graph.sessions()[1], 1), InfeasibleSessionError);
}

TEST(ShortestPathTest, ZeroPricesStillGiveFewestHops) {
  Instance inst = test::Line(4);
  inst.edges.emplace_back(0, 2);
  for (auto& node : inst.nodes) node.cost = 0.0;
  inst.sessions = {{"z", 0, 3, 1.0}};
  const Built b(inst);
  const PriceVector p{std::vector<double>(b.index.size(), 0.0)};
  const SessionPath path = ShortestPath(b.edges, p, b.graph, 0);
  EXPECT_EQ(path.arcs.size(), 3u);  // s' -> 0 -> 2 -> 3 -> d'
  EXPECT_EQ(b.index[path.arcs[1]].middle, 2);
}

TEST(DominantFlowPathTest, PicksHeavierBranch) {
  Instance inst = test::Grid(2, 2);  // 0-1, 0-2, 1-3, 2-3
  inst.sessions = {{"m", 0, 3, 1.0}};
  const Built b(inst);
  const int sp = b.graph.sessions()[0].art_source;
  const int dp = b.graph.sessions()[0].art_dest;
  FlowVector f = ZeroFlow(0, b.index);
  const auto put = [&](int v, int i, int w, double x) { f.values[*b.index.Find(v, i, w)] += x; };
  put(sp, 0, 1, 0.3);
  put(0, 1, 3, 0.3);
  put(1, 3, dp, 0.3);
  put(sp, 0, 2, 0.7);
  put(0, 2, 3, 0.7);
  put(2, 3, dp, 0.7);
  const FlowPath path = DominantFlowPath(b.edges, b.graph, b.index, f);
  EXPECT_EQ(path.nodes, (std::vector<int>{0, 2, 3}));
  EXPECT_DOUBLE_EQ(path.bottleneck, 0.7);
  EXPECT_EQ(path.unit_cost, 2.0);
}

}  // namespace
}  // namespace carpool
