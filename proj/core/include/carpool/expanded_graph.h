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

#ifndef CARPOOL_EXPANDED_GRAPH_H_
#define CARPOOL_EXPANDED_GRAPH_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carpool/instance.h"

namespace carpool {

// A session on the expanded graph. `source`/`dest` are the physical
// endpoints; `art_source`/`art_dest` are the degree-one artificial nodes
// that carry the session's supply and demand.
struct ExpandedSession {
  std::string id;
  int source = 0;
  int dest = 0;
  int art_source = 0;
  int art_dest = 0;
  double rate = 0.0;
};

// The connectivity graph augmented with one artificial source and one
// artificial destination node per session. Original nodes keep their ids
// 0..n-1; session t gets art_source = n + 2t and art_dest = n + 2t + 1.
// Artificial nodes cost nothing.
//
// Besides adjacency, the graph enumerates every ordered pair (i, j) with
// {i, j} an edge. Pairs are indexed densely in (i, j) lexicographic order;
// the same indexing is used for conservation residuals and for the vertices
// of the edge-graph.
class ExpandedGraph {
 public:
  const Instance& base() const { return base_; }

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  int num_original_nodes() const { return base_.num_nodes(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool IsArtificial(int node) const { return node >= num_original_nodes(); }

  double cost(int node) const { return costs_[node]; }
  std::span<const int> neighbors(int node) const { return adjacency_[node]; }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  // Position of `neighbor` in neighbors(node), or -1.
  int NeighborPosition(int node, int neighbor) const;
  bool Adjacent(int a, int b) const { return NeighborPosition(a, b) >= 0; }

  // Unordered edges {u, v} with u < v, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<ExpandedSession>& sessions() const { return sessions_; }
  std::size_t num_sessions() const { return sessions_.size(); }

  // Ordered pairs (i, j) with {i, j} in the edge set: 2 * num_edges() of them.
  std::size_t num_pairs() const { return pair_tail_.size(); }
  std::pair<int, int> pair(std::size_t index) const {
    return {pair_tail_[index], pair_head_[index]};
  }
  // Dense index of (i, j), or -1 when i and j are not adjacent.
  int PairIndex(int i, int j) const;
  // Index range of pairs whose first node is `node`.
  std::size_t pair_begin(int node) const { return pair_offset_[node]; }

  // Supply term of the conservation constraint at ordered pair (i, j):
  // +rate if i is the session's artificial source, -rate if j is its
  // artificial destination, zero otherwise.
  double Supply(std::size_t session, int i, int j) const;

 private:
  friend ExpandedGraph BuildExpandedGraph(const Instance& instance);

  Instance base_;
  std::vector<double> costs_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<ExpandedSession> sessions_;
  std::vector<std::size_t> pair_offset_;
  std::vector<int> pair_tail_;
  std::vector<int> pair_head_;
};

// Validates `instance` (see ValidateInstance) and adds the artificial
// session endpoints.
ExpandedGraph BuildExpandedGraph(const Instance& instance);

}  // namespace carpool

#endif  // CARPOOL_EXPANDED_GRAPH_H_
