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

// Deterministic message-passing simulation of the decentralized solver.
//
// Every expanded-graph node runs a NodeProcessor. Node i stores the prices
// and flow tallies of the triples it relays (middle node i) and the
// distance labels of the edge-graph vertices (i, j) it owns. Processors talk
// only to graph neighbors, through messages routed by the simulator.
//
// One sub-problem solve runs three waves, each until quiescence:
//   1. distance labels: a node that learns the distance of (v, i) offers
//      distance + p(v, i, w) to each vertex (i, w) and forwards improved
//      labels to w (asynchronous Bellman-Ford on the edge-graph);
//   2. hop labels: with distances final, fewest-arc counts and the smallest
//      predecessor are propagated along tight arcs only;
//   3. flow notices: each destination walks its predecessor chain back to
//      the source, one hop per message, telling every relay on the path how
//      much flow it carries.
// Paths are a function of the final labels, not of message arrival order,
// so every fair schedule reproduces the centralized paths exactly.

#ifndef CARPOOL_DIST_SIM_H_
#define CARPOOL_DIST_SIM_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "carpool/dual_solver.h"
#include "carpool/edge_graph.h"
#include "carpool/expanded_graph.h"
#include "carpool/flow.h"
#include "carpool/instance.h"
#include "carpool/shortest_path.h"
#include "carpool/triple_index.h"

namespace carpool {

// Distance of edge-graph vertex `vertex`, owned by the sender.
struct LabelUpdate {
  int session = 0;
  int vertex = 0;
  double distance = 0.0;
};

// Fewest-arc count of edge-graph vertex `vertex`, owned by the sender.
struct HopUpdate {
  int session = 0;
  int vertex = 0;
  int hops = 0;
};

// The sender relays `value` on `triple` (its own middle); the receiver is
// the triple's first node and continues the walk toward the source.
struct FlowNotice {
  int session = 0;
  int triple = 0;
  double value = 0.0;
};

struct Message {
  int sender = 0;
  int receiver = 0;
  std::variant<LabelUpdate, HopUpdate, FlowNotice> payload;
};

// Abstract payload sizes for the bytes estimate.
inline constexpr std::int64_t kLabelBytes = 24;
inline constexpr std::int64_t kHopBytes = 16;
inline constexpr std::int64_t kFlowBytes = 24;

enum class ScheduleMode { kSynchronous, kAsynchronous };

// Synchronous: each round delivers everything sent in the previous round
// and activates the receivers in id order. Asynchronous: messages land in
// the receiver's inbox at once and each round activates all nodes in a
// fresh seeded random order, so every node runs once per round.
struct SimSchedule {
  ScheduleMode mode = ScheduleMode::kSynchronous;
  std::uint64_t seed = 0;
  // Per wave.
  int max_rounds = 100000;

  static SimSchedule Synchronous() { return {}; }
  static SimSchedule Asynchronous(std::uint64_t seed) {
    return {ScheduleMode::kAsynchronous, seed, 100000};
  }
};

struct IterationMessageStats {
  std::int64_t messages = 0;
  int distance_rounds = 0;
  int hop_rounds = 0;
  int flow_rounds = 0;
};

struct MessageStats {
  std::int64_t sent = 0;
  std::int64_t received = 0;
  std::int64_t label_messages = 0;
  std::int64_t hop_messages = 0;
  std::int64_t flow_messages = 0;
  std::int64_t bytes = 0;
  std::int64_t neighbor_violations = 0;
  // Distinct unordered node pairs {a, b} (a < b) that carried a message.
  std::vector<std::pair<int, int>> links_used;
  std::vector<IterationMessageStats> per_iteration;

  std::int64_t in_flight() const { return sent - received; }
};

class NodeProcessor {
 public:
  NodeProcessor(int id, const ExpandedGraph& graph, const TripleIndex& index,
                const EdgeGraph& edge_graph);

  int id() const { return id_; }

  // Local prices for triples [triple_begin, triple_end) of the global index.
  std::size_t triple_begin() const { return triple_begin_; }
  std::size_t triple_end() const { return triple_begin_ + prices_.size(); }
  double price(std::size_t triple) const { return prices_[triple - triple_begin_]; }
  void set_price(std::size_t triple, double value) {
    prices_[triple - triple_begin_] = value;
  }
  double tally(std::size_t session, std::size_t triple) const {
    return tallies_[session][triple - triple_begin_];
  }

  // Labels of owned vertex (id, neighbors[position]).
  double distance(std::size_t session, int position) const {
    return labels_[session][position].distance;
  }
  int hops(std::size_t session, int position) const { return labels_[session][position].hops; }
  int pred_arc(std::size_t session, int position) const {
    return labels_[session][position].pred_arc;
  }

  // Applies the projected update to every price pair this node relays,
  // using its own flow tallies. Sends nothing.
  void UpdatePrices(double alpha);

 private:
  friend class DistributedNetwork;

  struct Label {
    double distance = kUnreachable;
    int hops = -1;
    int pred_arc = -1;
    int pred_vertex = -1;
  };

  void ResetForSubproblem();
  const Label& OwnedLabel(std::size_t session, int vertex) const;

  int id_;
  const ExpandedGraph* graph_;
  const TripleIndex* index_;
  const EdgeGraph* edge_graph_;
  std::size_t triple_begin_;
  std::size_t first_vertex_;
  std::vector<double> prices_;
  // [session][local triple]
  std::vector<std::vector<double>> tallies_;
  // [session][neighbor position]: labels of owned vertices (id, nb).
  std::vector<std::vector<Label>> labels_;
  // [session][neighbor position]: last labels heard for vertices (nb, id).
  std::vector<std::vector<double>> heard_distance_;
  std::deque<Message> inbox_;
};

struct DistributedPaths {
  std::vector<SessionPath> paths;
  IterationMessageStats stats;
};

class DistributedNetwork {
 public:
  // Loads the initial prices of `config` into the processors.
  DistributedNetwork(const ExpandedGraph& graph, const TripleIndex& index,
                     const SolverConfig& config);
  DistributedNetwork(const DistributedNetwork&) = delete;
  DistributedNetwork& operator=(const DistributedNetwork&) = delete;

  std::span<NodeProcessor> processors() { return processors_; }
  std::span<const NodeProcessor> processors() const { return processors_; }
  const EdgeGraph& edge_graph() const { return edge_graph_; }
  const MessageStats& stats() const { return stats_; }

  // Runs the three waves and returns each session's path. Throws
  // InfeasibleSessionError if a destination ends with no label, and
  // NonQuiescenceError if a wave exceeds schedule.max_rounds.
  DistributedPaths ShortestPaths(const SimSchedule& schedule);

  PriceVector GatherPrices() const;
  std::vector<FlowVector> GatherFlows() const;

 private:
  enum class Wave { kDistance, kHops, kFlow };

  void Send(Message message);
  void Process(NodeProcessor& node, Wave wave);
  int RunWave(Wave wave, const SimSchedule& schedule);

  const ExpandedGraph* graph_;
  const TripleIndex* index_;
  EdgeGraph edge_graph_;
  std::vector<NodeProcessor> processors_;
  MessageStats stats_;
  std::vector<Message> in_flight_;  // synchronous mode only
  ScheduleMode mode_ = ScheduleMode::kSynchronous;
  std::uint64_t async_waves_ = 0;
  // Walk order of flow notices per session, destination first.
  std::vector<std::vector<int>> chase_;
};

DistributedPaths DistributedShortestPaths(DistributedNetwork& network,
                                          const SimSchedule& schedule);

// Every processor updates its own prices with step size
// config.StepSize(iteration).
void DistributedPriceUpdate(DistributedNetwork& network, int iteration,
                            const SolverConfig& config);

struct DistributedSolveResult {
  Solution solution;
  SolveTrace trace;
  MessageStats stats;
};

DistributedSolveResult RunDistributedSolve(const Instance& instance,
                                           const SolverConfig& config,
                                           const SimSchedule& schedule);

}  // namespace carpool

#endif  // CARPOOL_DIST_SIM_H_
