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

#include "carpool/triple_index.h"

namespace carpool {
namespace {

// Offset of (nb[a], i, nb[b]) inside the block of middle node i.
std::size_t LocalOffset(int a, int b, int degree) {
  return static_cast<std::size_t>(a) * (degree - 1) + (b < a ? b : b - 1);
}

}  // namespace

TripleIndex::TripleIndex(const ExpandedGraph& graph) : graph_(&graph) {
  const int n = graph.num_nodes();
  middle_offset_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    const std::size_t d = graph.degree(i);
    middle_offset_[i + 1] = middle_offset_[i] + (d >= 2 ? d * (d - 1) : 0);
  }
  triples_.reserve(middle_offset_[n]);
  reverse_.resize(middle_offset_[n]);
  for (int i = 0; i < n; ++i) {
    const auto nbrs = graph.neighbors(i);
    const int d = static_cast<int>(nbrs.size());
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (a == b) continue;
        reverse_[triples_.size()] = middle_offset_[i] + LocalOffset(b, a, d);
        triples_.push_back({nbrs[a], i, nbrs[b]});
      }
    }
  }
}

std::optional<std::size_t> TripleIndex::Find(int from, int middle, int to) const {
  if (middle < 0 || middle >= graph_->num_nodes() || from == to) return std::nullopt;
  const int a = graph_->NeighborPosition(middle, from);
  const int b = graph_->NeighborPosition(middle, to);
  if (a < 0 || b < 0) return std::nullopt;
  return middle_offset_[middle] + LocalOffset(a, b, graph_->degree(middle));
}

}  // namespace carpool
