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

#include "carpool/edge_graph.h"

namespace carpool {

EdgeGraph::EdgeGraph(const ExpandedGraph& graph, const TripleIndex& index) : graph_(&graph) {
  const std::size_t nv = graph.num_pairs();
  vertex_pair_.reserve(nv);
  for (std::size_t v = 0; v < nv; ++v) vertex_pair_.push_back(graph.pair(v));

  arc_tail_.resize(index.size());
  arc_head_.resize(index.size());
  out_begin_.assign(nv, 0);
  out_end_.assign(nv, 0);
  std::vector<std::size_t> in_count(nv, 0);
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Triple& t = index[k];
    const int tail = graph.PairIndex(t.from, t.middle);
    const int head = graph.PairIndex(t.middle, t.to);
    arc_tail_[k] = tail;
    arc_head_[k] = head;
    // Triples (v, i, *) are contiguous in the index.
    if (out_end_[tail] == 0) out_begin_[tail] = k;
    out_end_[tail] = k + 1;
    ++in_count[head];
  }

  in_offset_.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) in_offset_[v + 1] = in_offset_[v] + in_count[v];
  in_arcs_.resize(index.size());
  std::vector<std::size_t> fill(in_offset_.begin(), in_offset_.end() - 1);
  for (std::size_t k = 0; k < index.size(); ++k) {
    in_arcs_[fill[arc_head_[k]]++] = static_cast<int>(k);
  }
}

int EdgeGraph::SourceVertex(const ExpandedSession& session) const {
  return graph_->PairIndex(session.art_source, session.source);
}

int EdgeGraph::TargetVertex(const ExpandedSession& session) const {
  return graph_->PairIndex(session.dest, session.art_dest);
}

}  // namespace carpool
