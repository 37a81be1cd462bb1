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

#ifndef CARPOOL_EDGE_GRAPH_H_
#define CARPOOL_EDGE_GRAPH_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "carpool/expanded_graph.h"
#include "carpool/flow.h"
#include "carpool/triple_index.h"

namespace carpool {

// Directed graph whose vertices are the ordered pairs (i, j) of adjacent
// expanded-graph nodes and whose arcs are the triples: triple k = (v, i, w)
// is the arc (v, i) -> (i, w), weighted by the price p(v, i, w). Vertex ids
// coincide with ExpandedGraph::PairIndex and arc ids with triple indices.
class EdgeGraph {
 public:
  EdgeGraph(const ExpandedGraph& graph, const TripleIndex& index);

  std::size_t num_vertices() const { return vertex_pair_.size(); }
  std::size_t num_arcs() const { return arc_tail_.size(); }

  std::pair<int, int> vertex(std::size_t v) const { return vertex_pair_[v]; }
  int tail(std::size_t arc) const { return arc_tail_[arc]; }
  int head(std::size_t arc) const { return arc_head_[arc]; }

  // Outgoing arcs of vertex (v, i): the contiguous triple block (v, i, *).
  std::pair<std::size_t, std::size_t> out_arcs(std::size_t v) const {
    return {out_begin_[v], out_end_[v]};
  }
  std::span<const int> in_arcs(std::size_t v) const {
    return std::span<const int>(in_arcs_).subspan(in_offset_[v],
                                                  in_offset_[v + 1] - in_offset_[v]);
  }

  // Endpoints of a session's sub-problem: (s'_t, s_t) and (d_t, d'_t).
  int SourceVertex(const ExpandedSession& session) const;
  int TargetVertex(const ExpandedSession& session) const;

  double ArcWeight(std::size_t arc, const PriceVector& prices) const {
    return prices.values[arc];
  }

 private:
  const ExpandedGraph* graph_;
  std::vector<std::pair<int, int>> vertex_pair_;
  std::vector<int> arc_tail_;
  std::vector<int> arc_head_;
  std::vector<std::size_t> out_begin_;
  std::vector<std::size_t> out_end_;
  std::vector<std::size_t> in_offset_;
  std::vector<int> in_arcs_;
};

}  // namespace carpool

#endif  // CARPOOL_EDGE_GRAPH_H_
