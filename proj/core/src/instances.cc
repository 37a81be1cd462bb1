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

#include "carpool/instances.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "carpool/errors.h"
#include "carpool/rng.h"

namespace carpool {

std::vector<std::pair<int, int>> UnitDiskEdges(const std::vector<Point>& points) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const double dx = points[a].x - points[b].x;
      const double dy = points[a].y - points[b].y;
      if (dx * dx + dy * dy < 1.0) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return edges;
}

Instance GenerateGeometric(const GeometricConfig& config) {
  if (!(config.side > 0.0)) throw std::invalid_argument("square side must be positive");
  if (config.num_sessions < 0) throw std::invalid_argument("session count must be >= 0");
  if (!(config.rate > 0.0)) throw std::invalid_argument("session rate must be positive");
  if (!(config.node_cost >= 0.0)) throw std::invalid_argument("node cost must be >= 0");

  for (int attempt = 0; attempt < kGraphRetryBudget; ++attempt) {
    const std::uint64_t base = 3 * static_cast<std::uint64_t>(attempt);
    Rng count_rng(config.seed, base + kCountStream);
    Rng position_rng(config.seed, base + kPositionStream);
    Rng session_rng(config.seed, base + kSessionStream);

    const int n = static_cast<int>(count_rng.Poisson(config.side * config.side));
    Instance instance;
    std::vector<Point> points;
    for (int v = 0; v < n; ++v) {
      const double x = position_rng.Uniform() * config.side;
      const double y = position_rng.Uniform() * config.side;
      points.push_back({x, y});
      instance.nodes.push_back({v, config.node_cost, Point{x, y}});
    }
    instance.edges = UnitDiskEdges(points);
    if (config.num_sessions == 0) return instance;
    if (n < 2) continue;

    const std::vector<int> component = ConnectedComponents(n, instance.edges);
    std::set<std::pair<int, int>> used;
    for (int draw = 0; draw < kSessionRetryBudget &&
                       static_cast<int>(instance.sessions.size()) < config.num_sessions;
         ++draw) {
      const int s = static_cast<int>(session_rng.UniformIndex(n));
      const int d = static_cast<int>(session_rng.UniformIndex(n));
      if (s == d || component[s] != component[d] || !used.emplace(s, d).second) continue;
      instance.sessions.push_back(
          {std::to_string(instance.sessions.size() + 1), s, d, config.rate});
    }
    if (static_cast<int>(instance.sessions.size()) == config.num_sessions) return instance;
  }
  throw GenerationError("could not place " + std::to_string(config.num_sessions) +
                        " connected sessions on a geometric graph of side " +
                        std::to_string(config.side) + " after " +
                        std::to_string(kGraphRetryBudget) + " attempts (retry budget exhausted)");
}

RoutingResult PlainRoutingCost(const Instance& instance) {
  ValidateInstance(instance);
  const int n = instance.num_nodes();
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& [a, b] : instance.edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());

  RoutingResult result;
  for (const Session& session : instance.sessions) {
    // Leaving node u costs c_u: the source and every relay transmit once.
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> pred(n, -1);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[session.source] = 0.0;
    heap.emplace(0.0, session.source);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (int v : adjacency[u]) {
        const double candidate = d + instance.nodes[u].cost;
        if (candidate < dist[v]) {
          dist[v] = candidate;
          pred[v] = u;
          heap.emplace(candidate, v);
        }
      }
    }
    if (pred[session.dest] < 0) throw InfeasibleSessionError(session.id);

    RoutingPath path;
    path.session_id = session.id;
    for (int v = session.dest; v != -1; v = pred[v]) path.nodes.push_back(v);
    std::reverse(path.nodes.begin(), path.nodes.end());
    path.cost = session.rate * dist[session.dest];
    result.cost += path.cost;
    result.paths.push_back(std::move(path));
  }
  return result;
}

namespace {

constexpr double kSpacing = 0.9;

Instance Relay3() {
  Instance inst;
  for (int v = 0; v < 3; ++v) inst.nodes.push_back({v, 1.0, Point{kSpacing * v, 0.0}});
  inst.edges = {{0, 1}, {1, 2}};
  inst.sessions = {{"1", 0, 2, 1.0}, {"2", 2, 0, 1.0}};
  return inst;
}

Instance Grid(double second_rate) {
  constexpr int kSide = 5;
  const auto id = [](int row, int col) { return row * kSide + col; };
  Instance inst;
  for (int r = 0; r < kSide; ++r) {
    for (int c = 0; c < kSide; ++c) {
      inst.nodes.push_back({id(r, c), 1.0, Point{kSpacing * c, kSpacing * r}});
    }
  }
  for (int r = 0; r < kSide; ++r) {
    for (int c = 0; c < kSide; ++c) {
      if (c + 1 < kSide) inst.edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < kSide) inst.edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  // The two sessions cross the grid in opposite horizontal directions.
  inst.sessions = {{"1", id(1, 0), id(3, 4), 1.0}, {"2", id(1, 4), id(3, 0), second_rate}};
  return inst;
}

constexpr double kGeo27Side = 5.5;
constexpr int kGeo27MinNodes = 27;
constexpr std::pair<int, int> kGeo27Pairs[] = {{20, 13}, {26, 7}, {15, 23}, {7, 22}};

Instance Geo27() {
  // First seed whose graph has enough nodes and connects all four pairs.
  for (std::uint64_t seed = 1;; ++seed) {
    GeometricConfig config;
    config.side = kGeo27Side;
    config.num_sessions = 0;
    config.seed = seed;
    Instance inst = GenerateGeometric(config);
    if (inst.num_nodes() < kGeo27MinNodes) continue;
    const std::vector<int> component = ConnectedComponents(inst.num_nodes(), inst.edges);
    const bool connected = std::all_of(std::begin(kGeo27Pairs), std::end(kGeo27Pairs),
                                       [&](const auto& p) {
                                         return component[p.first] == component[p.second];
                                       });
    if (!connected) continue;
    int t = 1;
    for (const auto& [s, d] : kGeo27Pairs) inst.sessions.push_back({std::to_string(t++), s, d, 1.0});
    return inst;
  }
}

}  // namespace

std::vector<NamedInstance> BuiltinInstances() {
  return {{"relay3", Relay3()},
          {"grid2", Grid(1.0)},
          {"grid2rate", Grid(4.0)},
          {"geo27", Geo27()}};
}

Instance BuiltinInstance(const std::string& name) {
  if (name == "relay3") return Relay3();
  if (name == "grid2") return Grid(1.0);
  if (name == "grid2rate") return Grid(4.0);
  if (name == "geo27") return Geo27();
  throw std::invalid_argument("unknown builtin instance '" + name +
                              "' (expected relay3, grid2, grid2rate or geo27)");
}

}  // namespace carpool
