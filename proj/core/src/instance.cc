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

#include "carpool/instance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "carpool/errors.h"

namespace carpool {
namespace {

[[noreturn]] void Reject(const std::string& message) { throw InvalidInstanceError(message); }

std::string Where(const char* list, std::size_t k) {
  std::ostringstream out;
  out << list << "[" << k << "]";
  return out.str();
}

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<int> ConnectedComponents(int num_nodes,
                                     const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(num_nodes);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [a, b] : edges) {
    const int ra = Find(parent, a);
    const int rb = Find(parent, b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> label(num_nodes, -1);
  std::vector<int> root_label(num_nodes, -1);
  int next = 0;
  for (int v = 0; v < num_nodes; ++v) {
    const int r = Find(parent, v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

void ValidateInstance(const Instance& instance) {
  const int n = instance.num_nodes();
  for (std::size_t k = 0; k < instance.nodes.size(); ++k) {
    const Node& node = instance.nodes[k];
    if (node.id != static_cast<int>(k)) {
      Reject(Where("nodes", k) + ": id " + std::to_string(node.id) +
             " breaks the dense numbering (expected " + std::to_string(k) + ")");
    }
    if (!std::isfinite(node.cost) || node.cost < 0.0) {
      Reject(Where("nodes", k) + ": cost must be finite and nonnegative");
    }
  }

  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < instance.edges.size(); ++k) {
    const auto [a, b] = instance.edges[k];
    if (a < 0 || a >= n || b < 0 || b >= n) {
      Reject(Where("edges", k) + ": unknown node in {" + std::to_string(a) + ", " +
             std::to_string(b) + "}");
    }
    if (a == b) Reject(Where("edges", k) + ": self-loop on node " + std::to_string(a));
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      Reject(Where("edges", k) + ": duplicate edge {" + std::to_string(a) + ", " +
             std::to_string(b) + "}");
    }
  }

  const std::vector<int> component = ConnectedComponents(n, instance.edges);
  std::unordered_set<std::string> ids;
  for (std::size_t k = 0; k < instance.sessions.size(); ++k) {
    const Session& s = instance.sessions[k];
    const std::string where = Where("sessions", k) + " (" + s.id + ")";
    if (!ids.insert(s.id).second) Reject(where + ": duplicate session id");
    if (s.source < 0 || s.source >= n) Reject(where + ": unknown source node");
    if (s.dest < 0 || s.dest >= n) Reject(where + ": unknown destination node");
    if (s.source == s.dest) Reject(where + ": source equals destination");
    if (!std::isfinite(s.rate) || s.rate <= 0.0) Reject(where + ": rate must be positive");
    if (component[s.source] != component[s.dest]) throw InfeasibleSessionError(s.id);
  }
}

}  // namespace carpool
