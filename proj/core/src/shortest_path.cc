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

#include "carpool/shortest_path.h"

#include <algorithm>
#include <deque>

#include "carpool/errors.h"

namespace carpool {

std::vector<double> LabelCorrectingDistances(const EdgeGraph& graph,
                                             std::span<const double> weights, int source) {
  std::vector<double> dist(graph.num_vertices(), kUnreachable);
  std::vector<char> queued(graph.num_vertices(), 0);
  std::deque<int> queue;
  dist[source] = 0.0;
  queue.push_back(source);
  queued[source] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    queued[u] = 0;
    const auto [begin, end] = graph.out_arcs(u);
    for (std::size_t arc = begin; arc < end; ++arc) {
      const int v = graph.head(arc);
      const double candidate = dist[u] + weights[arc];
      if (candidate < dist[v]) {
        dist[v] = candidate;
        if (!queued[v]) {
          queued[v] = 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

ShortestPathTree CanonicalTree(const EdgeGraph& graph, std::span<const double> weights,
                               int source, std::vector<double> dist) {
  const std::size_t nv = graph.num_vertices();
  ShortestPathTree tree;
  tree.dist = std::move(dist);
  tree.hops.assign(nv, -1);
  tree.pred_arc.assign(nv, -1);

  // Breadth-first search restricted to tight arcs gives the fewest arcs
  // among shortest paths.
  std::deque<int> queue;
  tree.hops[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const auto [begin, end] = graph.out_arcs(u);
    for (std::size_t arc = begin; arc < end; ++arc) {
      const int v = graph.head(arc);
      if (tree.hops[v] < 0 && IsTightArc(tree.dist[u], weights[arc], tree.dist[v])) {
        tree.hops[v] = tree.hops[u] + 1;
        queue.push_back(v);
      }
    }
  }

  for (std::size_t v = 0; v < nv; ++v) {
    if (tree.hops[v] <= 0) continue;
    int best_tail = -1;
    for (int arc : graph.in_arcs(v)) {
      const int u = graph.tail(arc);
      if (tree.hops[u] != tree.hops[v] - 1) continue;
      if (!IsTightArc(tree.dist[u], weights[arc], tree.dist[v])) continue;
      if (best_tail < 0 || u < best_tail) {
        best_tail = u;
        tree.pred_arc[v] = arc;
      }
    }
  }
  return tree;
}

SessionPath ExtractPath(const EdgeGraph& graph, const ShortestPathTree& tree,
                        const ExpandedSession& session, std::size_t session_index) {
  const int source = graph.SourceVertex(session);
  const int target = graph.TargetVertex(session);
  if (tree.dist[target] == kUnreachable) throw InfeasibleSessionError(session.id);

  SessionPath path;
  path.session = session_index;
  path.weight = tree.dist[target];
  for (int v = target; v != source;) {
    path.vertices.push_back(v);
    const int arc = tree.pred_arc[v];
    path.arcs.push_back(arc);
    v = graph.tail(arc);
  }
  path.vertices.push_back(source);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.arcs.begin(), path.arcs.end());
  return path;
}

SessionPath ShortestPath(const EdgeGraph& graph, const PriceVector& prices,
                         const ExpandedGraph& expanded, std::size_t session) {
  const ExpandedSession& s = expanded.sessions()[session];
  const int source = graph.SourceVertex(s);
  std::vector<double> dist = LabelCorrectingDistances(graph, prices.values, source);
  const ShortestPathTree tree = CanonicalTree(graph, prices.values, source, std::move(dist));
  return ExtractPath(graph, tree, s, session);
}

FlowVector PathToFlow(const SessionPath& path, double rate, const TripleIndex& index) {
  FlowVector flow = ZeroFlow(path.session, index);
  for (int arc : path.arcs) flow.values[arc] = rate;
  return flow;
}

double DualBound(const ExpandedGraph& expanded, std::span<const SessionPath> paths) {
  double bound = 0.0;
  for (const SessionPath& path : paths) {
    bound += expanded.sessions()[path.session].rate * path.weight;
  }
  return bound;
}

SubproblemResult SolvePrimalSubproblem(const ExpandedGraph& expanded,
                                       const TripleIndex& index, const EdgeGraph& graph,
                                       const PriceVector& prices) {
  SubproblemResult result;
  result.paths.reserve(expanded.num_sessions());
  result.flows.reserve(expanded.num_sessions());
  for (std::size_t t = 0; t < expanded.num_sessions(); ++t) {
    result.paths.push_back(ShortestPath(graph, prices, expanded, t));
    result.flows.push_back(PathToFlow(result.paths.back(), expanded.sessions()[t].rate, index));
  }
  result.q_star = DualBound(expanded, result.paths);
  return result;
}

FlowPath DominantFlowPath(const EdgeGraph& graph, const ExpandedGraph& expanded,
                          const TripleIndex& index, const FlowVector& flow) {
  const ExpandedSession& session = expanded.sessions()[flow.session];
  const int source = graph.SourceVertex(session);
  const int target = graph.TargetVertex(session);
  const std::size_t n = graph.num_vertices();
  std::vector<double> width(n, 0.0);
  std::vector<int> pred(n, -1);
  std::vector<char> done(n, 0);
  width[source] = kUnreachable;
  for (;;) {
    int u = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && width[v] > 0.0 && (u < 0 || width[v] > width[u])) u = static_cast<int>(v);
    }
    if (u < 0 || u == target) break;
    done[u] = 1;
    const auto [begin, end] = graph.out_arcs(u);
    for (std::size_t arc = begin; arc < end; ++arc) {
      const int v = graph.head(arc);
      const double w = std::min(width[u], flow.values[arc]);
      if (!done[v] && w > width[v]) {
        width[v] = w;
        pred[v] = static_cast<int>(arc);
      }
    }
  }
  if (width[target] <= 0.0) throw InfeasibleSessionError(session.id);

  FlowPath path;
  path.bottleneck = width[target];
  for (int v = target; v != source; v = graph.tail(pred[v])) path.arcs.push_back(pred[v]);
  std::reverse(path.arcs.begin(), path.arcs.end());
  for (int arc : path.arcs) {
    const Triple& t = index[arc];
    path.nodes.push_back(t.middle);
    if (!expanded.IsArtificial(t.to)) path.unit_cost += expanded.cost(t.middle);
  }
  return path;
}

}  // namespace carpool
