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

// Instance sources: random geometric graphs, curated regression instances,
// and the uncoded shortest-path routing baseline.

#ifndef CARPOOL_INSTANCES_H_
#define CARPOOL_INSTANCES_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "carpool/instance.h"

namespace carpool {

// Nodes are a unit-intensity Poisson point process on [0, side]^2; two nodes
// are neighbors iff their distance is below 1.
struct GeometricConfig {
  double side = 6.0;
  int num_sessions = 4;
  double rate = 1.0;
  double node_cost = 1.0;
  std::uint64_t seed = 1;
};

inline constexpr int kSessionRetryBudget = 100;
inline constexpr int kGraphRetryBudget = 100;

// Random stream ids used by GenerateGeometric. Attempt a uses streams
// 3a + kCountStream, 3a + kPositionStream and 3a + kSessionStream.
inline constexpr std::uint64_t kCountStream = 0;
inline constexpr std::uint64_t kPositionStream = 1;
inline constexpr std::uint64_t kSessionStream = 2;

// Draws the point set and the sessions. Sessions are distinct (s, d) pairs
// with s != d in the same connected component; a graph that cannot supply
// them within kSessionRetryBudget draws is regenerated, at most
// kGraphRetryBudget times, before GenerationError is thrown.
Instance GenerateGeometric(const GeometricConfig& config);

// Unit-disk edges over the given positions (distance strictly below 1).
std::vector<std::pair<int, int>> UnitDiskEdges(const std::vector<Point>& points);

struct RoutingPath {
  std::string session_id;
  std::vector<int> nodes;
  // Rate times the sum of costs of every transmitting node (source and
  // relays; the destination does not transmit).
  double cost = 0.0;
};

struct RoutingResult {
  double cost = 0.0;
  std::vector<RoutingPath> paths;
};

// Uncoded reference: each session independently follows a cheapest path.
// Throws InfeasibleSessionError for a session without a path.
RoutingResult PlainRoutingCost(const Instance& instance);

struct NamedInstance {
  std::string name;
  Instance instance;
};

// relay3:    A - R - B chain with A->B and B->A unit sessions.
// grid2:     5x5 grid, two unit sessions crossing between opposite corners
//            of the middle rows.
// grid2rate: grid2 with the second session at rate 4.
// geo27:     seeded geometric graph with at least 27 nodes and the unit
//            sessions (20,13), (26,7), (15,23), (7,22).
std::vector<NamedInstance> BuiltinInstances();

// Throws std::invalid_argument for an unknown name.
Instance BuiltinInstance(const std::string& name);

}  // namespace carpool

#endif  // CARPOOL_INSTANCES_H_
