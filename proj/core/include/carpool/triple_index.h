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

#ifndef CARPOOL_TRIPLE_INDEX_H_
#define CARPOOL_TRIPLE_INDEX_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "carpool/expanded_graph.h"

namespace carpool {

// Two-hop flow descriptor: packets relayed from `from` to `to` via `middle`.
struct Triple {
  int from = 0;
  int middle = 0;
  int to = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Canonical enumeration of all triples (v, i, w) of the expanded graph with
// {v, i} and {i, w} edges and v != w. Triples are ordered by (i, v, w), so
// the triples sharing a middle node form one contiguous block, and within
// it the triples sharing a first node are contiguous too.
class TripleIndex {
 public:
  // `graph` must outlive the index.
  explicit TripleIndex(const ExpandedGraph& graph);

  std::size_t size() const { return triples_.size(); }
  const Triple& operator[](std::size_t k) const { return triples_[k]; }
  const std::vector<Triple>& triples() const { return triples_; }

  std::optional<std::size_t> Find(int from, int middle, int to) const;
  // Index of (w, i, v) for triple k = (v, i, w).
  std::size_t Reverse(std::size_t k) const { return reverse_[k]; }

  // Triples with the given middle node occupy [middle_begin, middle_end).
  std::size_t middle_begin(int node) const { return middle_offset_[node]; }
  std::size_t middle_end(int node) const { return middle_offset_[node + 1]; }

 private:
  const ExpandedGraph* graph_;
  std::vector<Triple> triples_;
  std::vector<std::size_t> reverse_;
  std::vector<std::size_t> middle_offset_;
};

}  // namespace carpool

#endif  // CARPOOL_TRIPLE_INDEX_H_
