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

#include "carpool/dist_sim.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "carpool/errors.h"
#include "carpool/rng.h"

namespace carpool {
namespace {

// Index of (nb[from_pos], i, nb[to_pos]) within node i's triple block.
std::size_t LocalTriple(int from_pos, int to_pos, int degree) {
  return static_cast<std::size_t>(from_pos) * (degree - 1) +
         (to_pos < from_pos ? to_pos : to_pos - 1);
}

}  // namespace

NodeProcessor::NodeProcessor(int id, const ExpandedGraph& graph, const TripleIndex& index,
                             const EdgeGraph& edge_graph)
    : id_(id),
      graph_(&graph),
      index_(&index),
      edge_graph_(&edge_graph),
      triple_begin_(index.middle_begin(id)),
      first_vertex_(graph.pair_begin(id)),
      prices_(index.middle_end(id) - index.middle_begin(id), 0.0) {
  const std::size_t sessions = graph.num_sessions();
  const std::size_t degree = graph.degree(id);
  tallies_.assign(sessions, std::vector<double>(prices_.size(), 0.0));
  labels_.assign(sessions, std::vector<Label>(degree));
  heard_distance_.assign(sessions, std::vector<double>(degree, kUnreachable));
}

void NodeProcessor::ResetForSubproblem() {
  for (auto& t : tallies_) std::fill(t.begin(), t.end(), 0.0);
  for (auto& l : labels_) std::fill(l.begin(), l.end(), Label{});
  for (auto& h : heard_distance_) std::fill(h.begin(), h.end(), kUnreachable);
}

void NodeProcessor::UpdatePrices(double alpha) {
  for (std::size_t k = triple_begin(); k < triple_end(); ++k) {
    const Triple& t = (*index_)[k];
    if (t.from > t.to) continue;
    const std::size_t r = index_->Reverse(k);
    double forward = 0.0;
    double backward = 0.0;
    for (const auto& tally : tallies_) {
      forward += tally[k - triple_begin_];
      backward += tally[r - triple_begin_];
    }
    std::tie(prices_[k - triple_begin_], prices_[r - triple_begin_]) =
        ProjectedPairUpdate(price(k), forward, backward, alpha, graph_->cost(id_));
  }
}

const NodeProcessor::Label& NodeProcessor::OwnedLabel(std::size_t session, int vertex) const {
  return labels_[session][vertex - static_cast<int>(first_vertex_)];
}

DistributedNetwork::DistributedNetwork(const ExpandedGraph& graph, const TripleIndex& index,
                                       const SolverConfig& config)
    : graph_(&graph), index_(&index), edge_graph_(graph, index) {
  processors_.reserve(graph.num_nodes());
  for (int v = 0; v < graph.num_nodes(); ++v) {
    processors_.emplace_back(v, graph, index, edge_graph_);
  }
  const PriceVector initial = InitPrices(graph, index, config);
  for (std::size_t k = 0; k < index.size(); ++k) {
    processors_[index[k].middle].set_price(k, initial.values[k]);
  }
  chase_.resize(graph.num_sessions());
}

void DistributedNetwork::Send(Message message) {
  if (!graph_->Adjacent(message.sender, message.receiver)) {
    ++stats_.neighbor_violations;
    throw std::logic_error("message from node " + std::to_string(message.sender) +
                           " to non-neighbor " + std::to_string(message.receiver));
  }
  ++stats_.sent;
  if (std::holds_alternative<LabelUpdate>(message.payload)) {
    ++stats_.label_messages;
    stats_.bytes += kLabelBytes;
  } else if (std::holds_alternative<HopUpdate>(message.payload)) {
    ++stats_.hop_messages;
    stats_.bytes += kHopBytes;
  } else {
    ++stats_.flow_messages;
    stats_.bytes += kFlowBytes;
  }
  const std::pair<int, int> link{std::min(message.sender, message.receiver),
                                 std::max(message.sender, message.receiver)};
  auto& links = stats_.links_used;
  const auto it = std::lower_bound(links.begin(), links.end(), link);
  if (it == links.end() || *it != link) links.insert(it, link);

  if (mode_ == ScheduleMode::kSynchronous) {
    in_flight_.push_back(std::move(message));
  } else {
    processors_[message.receiver].inbox_.push_back(std::move(message));
  }
}

void DistributedNetwork::Process(NodeProcessor& node, Wave wave) {
  std::deque<Message> inbox;
  inbox.swap(node.inbox_);
  const int degree = graph_->degree(node.id_);
  const auto nbrs = graph_->neighbors(node.id_);

  // Owned vertices whose label improved, sent once after the whole inbox.
  std::vector<std::pair<int, int>> improved;  // (session, neighbor position)
  const auto mark = [&](int session, int position) {
    const std::pair<int, int> key{session, position};
    if (std::find(improved.begin(), improved.end(), key) == improved.end()) {
      improved.push_back(key);
    }
  };

  for (const Message& message : inbox) {
    ++stats_.received;
    const int from_pos = graph_->NeighborPosition(node.id_, message.sender);

    if (const auto* label = std::get_if<LabelUpdate>(&message.payload)) {
      double& heard = node.heard_distance_[label->session][from_pos];
      if (!(label->distance < heard)) continue;
      heard = label->distance;
      for (int to_pos = 0; to_pos < degree; ++to_pos) {
        if (to_pos == from_pos) continue;
        const double candidate =
            heard + node.prices_[LocalTriple(from_pos, to_pos, degree)];
        NodeProcessor::Label& own = node.labels_[label->session][to_pos];
        if (candidate < own.distance) {
          own.distance = candidate;
          mark(label->session, to_pos);
        }
      }
    } else if (const auto* hop = std::get_if<HopUpdate>(&message.payload)) {
      const double heard = node.heard_distance_[hop->session][from_pos];
      for (int to_pos = 0; to_pos < degree; ++to_pos) {
        if (to_pos == from_pos) continue;
        const std::size_t local = LocalTriple(from_pos, to_pos, degree);
        NodeProcessor::Label& own = node.labels_[hop->session][to_pos];
        if (!IsTightArc(heard, node.prices_[local], own.distance)) continue;
        const int hops = hop->hops + 1;
        const bool better = own.hops < 0 || hops < own.hops ||
                            (hops == own.hops && hop->vertex < own.pred_vertex);
        if (!better) continue;
        if (own.hops < 0 || hops < own.hops) mark(hop->session, to_pos);
        own.hops = hops;
        own.pred_vertex = hop->vertex;
        own.pred_arc = static_cast<int>(node.triple_begin_ + local);
      }
    } else {
      const auto& notice = std::get<FlowNotice>(message.payload);
      // The sender relays on (id, sender, *), so vertex (id, sender) is on
      // the path; continue with its predecessor unless it is the source.
      const NodeProcessor::Label& own = node.labels_[notice.session][from_pos];
      if (own.pred_arc < 0) continue;
      const Triple& t = (*index_)[own.pred_arc];
      node.tallies_[notice.session][own.pred_arc - node.triple_begin_] = notice.value;
      chase_[notice.session].push_back(own.pred_arc);
      Send({node.id_, t.from, FlowNotice{notice.session, own.pred_arc, notice.value}});
    }
  }

  std::sort(improved.begin(), improved.end());
  for (const auto& [session, position] : improved) {
    const int vertex = static_cast<int>(node.first_vertex_) + position;
    const NodeProcessor::Label& own = node.labels_[session][position];
    if (wave == Wave::kDistance) {
      Send({node.id_, nbrs[position], LabelUpdate{session, vertex, own.distance}});
    } else {
      Send({node.id_, nbrs[position], HopUpdate{session, vertex, own.hops}});
    }
  }
}

int DistributedNetwork::RunWave(Wave wave, const SimSchedule& schedule) {
  const auto pending = [&] {
    if (!in_flight_.empty()) return true;
    return std::any_of(processors_.begin(), processors_.end(),
                       [](const NodeProcessor& p) { return !p.inbox_.empty(); });
  };
  const auto fail = [&] {
    std::ostringstream out;
    out << "no quiescence after " << schedule.max_rounds << " rounds; active labels:";
    std::vector<Message> waiting = in_flight_;
    for (const NodeProcessor& p : processors_) {
      waiting.insert(waiting.end(), p.inbox_.begin(), p.inbox_.end());
    }
    for (const Message& m : waiting) {
      std::visit(
          [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, FlowNotice>) {
              out << " [session " << payload.session << " triple " << payload.triple << "]";
            } else {
              const auto [a, b] = edge_graph_.vertex(payload.vertex);
              out << " [session " << payload.session << " vertex (" << a << "," << b << ")]";
            }
          },
          m.payload);
    }
    throw NonQuiescenceError(out.str());
  };

  int rounds = 0;
  if (schedule.mode == ScheduleMode::kSynchronous) {
    while (pending()) {
      if (rounds >= schedule.max_rounds) fail();
      ++rounds;
      std::vector<Message> delivering;
      delivering.swap(in_flight_);
      for (Message& m : delivering) processors_[m.receiver].inbox_.push_back(std::move(m));
      for (NodeProcessor& p : processors_) {
        if (!p.inbox_.empty()) Process(p, wave);
      }
    }
    return rounds;
  }

  Rng rng(schedule.seed, async_waves_++);
  std::vector<int> order(processors_.size());
  while (pending()) {
    if (rounds >= schedule.max_rounds) fail();
    ++rounds;
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[rng.UniformIndex(k)]);
    }
    for (int v : order) {
      if (!processors_[v].inbox_.empty()) Process(processors_[v], wave);
    }
  }
  return rounds;
}

DistributedPaths DistributedNetwork::ShortestPaths(const SimSchedule& schedule) {
  mode_ = schedule.mode;
  const std::int64_t sent_before = stats_.sent;
  for (NodeProcessor& p : processors_) p.ResetForSubproblem();
  for (auto& c : chase_) c.clear();

  DistributedPaths result;
  const auto& sessions = graph_->sessions();

  // Each artificial source owns the session's source vertex (s', s).
  for (std::size_t t = 0; t < sessions.size(); ++t) {
    NodeProcessor& origin = processors_[sessions[t].art_source];
    origin.labels_[t][0] = {0.0, 0, -1, -1};
    Send({origin.id_, sessions[t].source,
          LabelUpdate{static_cast<int>(t), static_cast<int>(origin.first_vertex_), 0.0}});
  }
  result.stats.distance_rounds = RunWave(Wave::kDistance, schedule);

  for (std::size_t t = 0; t < sessions.size(); ++t) {
    const NodeProcessor& origin = processors_[sessions[t].art_source];
    Send({origin.id_, sessions[t].source,
          HopUpdate{static_cast<int>(t), static_cast<int>(origin.first_vertex_), 0}});
  }
  result.stats.hop_rounds = RunWave(Wave::kHops, schedule);

  for (std::size_t t = 0; t < sessions.size(); ++t) {
    NodeProcessor& dest = processors_[sessions[t].dest];
    const int target = edge_graph_.TargetVertex(sessions[t]);
    const NodeProcessor::Label& label = dest.OwnedLabel(t, target);
    if (label.distance == kUnreachable) throw InfeasibleSessionError(sessions[t].id);
    dest.tallies_[t][label.pred_arc - dest.triple_begin_] = sessions[t].rate;
    chase_[t].push_back(label.pred_arc);
    Send({dest.id_, (*index_)[label.pred_arc].from,
          FlowNotice{static_cast<int>(t), label.pred_arc, sessions[t].rate}});
  }
  result.stats.flow_rounds = RunWave(Wave::kFlow, schedule);

  for (std::size_t t = 0; t < sessions.size(); ++t) {
    SessionPath path;
    path.session = t;
    path.arcs.assign(chase_[t].rbegin(), chase_[t].rend());
    path.vertices.push_back(edge_graph_.tail(path.arcs.front()));
    for (int arc : path.arcs) path.vertices.push_back(edge_graph_.head(arc));
    const int target = edge_graph_.TargetVertex(sessions[t]);
    path.weight = processors_[sessions[t].dest].OwnedLabel(t, target).distance;
    result.paths.push_back(std::move(path));
  }
  result.stats.messages = stats_.sent - sent_before;
  stats_.per_iteration.push_back(result.stats);
  return result;
}

PriceVector DistributedNetwork::GatherPrices() const {
  PriceVector prices{std::vector<double>(index_->size(), 0.0)};
  for (const NodeProcessor& p : processors_) {
    for (std::size_t k = p.triple_begin(); k < p.triple_end(); ++k) prices.values[k] = p.price(k);
  }
  return prices;
}

std::vector<FlowVector> DistributedNetwork::GatherFlows() const {
  std::vector<FlowVector> flows;
  for (std::size_t t = 0; t < graph_->num_sessions(); ++t) {
    FlowVector f = ZeroFlow(t, *index_);
    for (const NodeProcessor& p : processors_) {
      for (std::size_t k = p.triple_begin(); k < p.triple_end(); ++k) f.values[k] = p.tally(t, k);
    }
    flows.push_back(std::move(f));
  }
  return flows;
}

DistributedPaths DistributedShortestPaths(DistributedNetwork& network,
                                          const SimSchedule& schedule) {
  return network.ShortestPaths(schedule);
}

void DistributedPriceUpdate(DistributedNetwork& network, int iteration,
                            const SolverConfig& config) {
  const double alpha = config.StepSize(iteration);
  for (NodeProcessor& p : network.processors()) p.UpdatePrices(alpha);
}

namespace {

class DistributedEngine final : public DualIterationEngine {
 public:
  DistributedEngine(DistributedNetwork& network, const ExpandedGraph& graph,
                    const SolverConfig& config, const SimSchedule& schedule)
      : network_(network), graph_(graph), config_(config), schedule_(schedule) {}

  SubproblemResult SolveSubproblem(int) override {
    SubproblemResult result;
    result.paths = DistributedShortestPaths(network_, schedule_).paths;
    result.flows = network_.GatherFlows();
    result.q_star = DualBound(graph_, result.paths);
    return result;
  }

  void UpdatePrices(int iteration, double, std::span<const FlowVector>) override {
    DistributedPriceUpdate(network_, iteration, config_);
  }

  PriceVector Prices() const override { return network_.GatherPrices(); }

 private:
  DistributedNetwork& network_;
  const ExpandedGraph& graph_;
  const SolverConfig& config_;
  const SimSchedule& schedule_;
};

}  // namespace

DistributedSolveResult RunDistributedSolve(const Instance& instance,
                                           const SolverConfig& config,
                                           const SimSchedule& schedule) {
  config.Validate();
  const ExpandedGraph graph = BuildExpandedGraph(instance);
  const TripleIndex index(graph);
  DistributedNetwork network(graph, index, config);
  DistributedEngine engine(network, graph, config, schedule);
  SolveResult solved = RunDualLoop(graph, index, config, engine);
  return {std::move(solved.solution), std::move(solved.trace), network.stats()};
}

}  // namespace carpool
