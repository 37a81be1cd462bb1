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

#include "carpool/expanded_graph.h"

#include <algorithm>

namespace carpool {

int ExpandedGraph::NeighborPosition(int node, int neighbor) const {
  const std::vector<int>& nbrs = adjacency_[node];
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), neighbor);
  if (it == nbrs.end() || *it != neighbor) return -1;
  return static_cast<int>(it - nbrs.begin());
}

int ExpandedGraph::PairIndex(int i, int j) const {
  if (i < 0 || i >= num_nodes()) return -1;
  const int pos = NeighborPosition(i, j);
  if (pos < 0) return -1;
  return static_cast<int>(pair_offset_[i]) + pos;
}

double ExpandedGraph::Supply(std::size_t session, int i, int j) const {
  const ExpandedSession& s = sessions_[session];
  if (i == s.art_source) return s.rate;
  // art_dest has degree one, so (dest, art_dest) is the only pair ending there.
  if (j == s.art_dest) return -s.rate;
  return 0.0;
}

ExpandedGraph BuildExpandedGraph(const Instance& instance) {
  ValidateInstance(instance);

  ExpandedGraph g;
  g.base_ = instance;
  const int n = instance.num_nodes();
  const int total = n + 2 * static_cast<int>(instance.sessions.size());

  g.costs_.assign(total, 0.0);
  for (const Node& node : instance.nodes) g.costs_[node.id] = node.cost;

  g.edges_.reserve(instance.edges.size() + 2 * instance.sessions.size());
  for (const auto& [a, b] : instance.edges) {
    g.edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  for (std::size_t t = 0; t < instance.sessions.size(); ++t) {
    const Session& s = instance.sessions[t];
    ExpandedSession es;
    es.id = s.id;
    es.source = s.source;
    es.dest = s.dest;
    es.art_source = n + 2 * static_cast<int>(t);
    es.art_dest = es.art_source + 1;
    es.rate = s.rate;
    g.edges_.emplace_back(es.source, es.art_source);
    g.edges_.emplace_back(es.dest, es.art_dest);
    g.sessions_.push_back(std::move(es));
  }
  std::sort(g.edges_.begin(), g.edges_.end());

  g.adjacency_.assign(total, {});
  for (const auto& [a, b] : g.edges_) {
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());

  g.pair_offset_.assign(total + 1, 0);
  for (int v = 0; v < total; ++v) {
    g.pair_offset_[v + 1] = g.pair_offset_[v] + g.adjacency_[v].size();
    for (int w : g.adjacency_[v]) {
      g.pair_tail_.push_back(v);
      g.pair_head_.push_back(w);
    }
  }
  return g;
}

}  // namespace carpool
