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

// Problem data for minimum-cost multiple-unicast routing: an undirected
// connectivity graph whose nodes carry a per-broadcast cost, plus the list of
// unicast sessions that must be supported.

#ifndef CARPOOL_INSTANCE_H_
#define CARPOOL_INSTANCE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace carpool {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Node {
  int id = 0;
  // Cost of broadcasting one packet per unit time.
  double cost = 1.0;
  std::optional<Point> pos;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Session {
  std::string id;
  int source = 0;
  int dest = 0;
  double rate = 1.0;

  friend bool operator==(const Session&, const Session&) = default;
};

// Node ids are dense: nodes[k].id == k. Edges are unordered pairs.
struct Instance {
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<Session> sessions;

  int num_nodes() const { return static_cast<int>(nodes.size()); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws InvalidInstanceError naming the first offending element when any
// invariant fails: dense ids, finite nonnegative costs, edges between
// existing distinct nodes without duplicates, sessions with distinct
// existing endpoints, positive finite rates and unique session ids. A
// destination outside its source's component raises InfeasibleSessionError.
void ValidateInstance(const Instance& instance);

// Connected-component label per node (labels are dense, in order of first
// appearance by node id).
std::vector<int> ConnectedComponents(int num_nodes,
                                     const std::vector<std::pair<int, int>>& edges);

}  // namespace carpool

#endif  // CARPOOL_INSTANCE_H_
