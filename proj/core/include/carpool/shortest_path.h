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

// Per-session primal sub-problem: with prices fixed, each session routes its
// whole rate along a shortest path of the edge-graph.
//
// Ties among shortest paths are broken deterministically, first by fewer
// arcs and then by the smallest predecessor vertex at every step (the
// lexicographically smallest vertex sequence read from the destination back
// to the source). The rule only depends on the final distance labels, so any
// algorithm that computes exact distances yields the same path.

#ifndef CARPOOL_SHORTEST_PATH_H_
#define CARPOOL_SHORTEST_PATH_H_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "carpool/edge_graph.h"
#include "carpool/expanded_graph.h"
#include "carpool/flow.h"
#include "carpool/triple_index.h"

namespace carpool {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Distances from `source` under nonnegative arc weights, by FIFO label
// correction. Unreachable vertices keep kUnreachable.
std::vector<double> LabelCorrectingDistances(const EdgeGraph& graph,
                                             std::span<const double> weights, int source);

// Arc (u -> v) is tight when dist[u] + w == dist[v] exactly, with both
// labels finite.
inline bool IsTightArc(double tail_dist, double weight, double head_dist) {
  return tail_dist != kUnreachable && head_dist != kUnreachable &&
         tail_dist + weight == head_dist;
}

struct ShortestPathTree {
  std::vector<double> dist;
  // Fewest arcs among tight paths from the source; -1 if unreachable.
  std::vector<int> hops;
  // Arc entering each vertex on the canonical path; -1 at the source and at
  // unreachable vertices.
  std::vector<int> pred_arc;
};

// Applies the tie-break rule on top of exact distance labels.
ShortestPathTree CanonicalTree(const EdgeGraph& graph, std::span<const double> weights,
                               int source, std::vector<double> dist);

struct SessionPath {
  std::size_t session = 0;
  // Edge-graph vertices from (s'_t, s_t) to (d_t, d'_t).
  std::vector<int> vertices;
  // arcs[k] joins vertices[k] and vertices[k + 1]; arc ids are triple ids.
  std::vector<int> arcs;
  double weight = 0.0;
};

// Follows pred_arc back from `target`. Throws InfeasibleSessionError when the
// target is unreachable.
SessionPath ExtractPath(const EdgeGraph& graph, const ShortestPathTree& tree,
                        const ExpandedSession& session, std::size_t session_index);

SessionPath ShortestPath(const EdgeGraph& graph, const PriceVector& prices,
                         const ExpandedGraph& expanded, std::size_t session);

// Puts the session's rate on every triple of the path.
FlowVector PathToFlow(const SessionPath& path, double rate, const TripleIndex& index);

struct SubproblemResult {
  std::vector<SessionPath> paths;
  std::vector<FlowVector> flows;
  // Optimal value of the priced sub-problem: sum over sessions of
  // rate * path weight. A lower bound on the optimal routing cost.
  double q_star = 0.0;
};

SubproblemResult SolvePrimalSubproblem(const ExpandedGraph& expanded,
                                       const TripleIndex& index, const EdgeGraph& graph,
                                       const PriceVector& prices);

// Sum of rate * path weight in session order.
double DualBound(const ExpandedGraph& expanded, std::span<const SessionPath> paths);

// Widest source-to-target path through the support of a session flow, i.e.
// the first path a bottleneck decomposition would peel off.
struct FlowPath {
  std::vector<int> nodes;  // original nodes, source first, destination last
  std::vector<int> arcs;
  double bottleneck = 0.0;
  // Per unit of rate: sum of c_i over transmitting nodes (destination excluded).
  double unit_cost = 0.0;
};
FlowPath DominantFlowPath(const EdgeGraph& graph, const ExpandedGraph& expanded,
                          const TripleIndex& index, const FlowVector& flow);

}  // namespace carpool

#endif  // CARPOOL_SHORTEST_PATH_H_
