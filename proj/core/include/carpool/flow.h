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

// Flow and price containers over the triple index, plus the accounting that
// turns per-session flows into transmissions and cost.

#ifndef CARPOOL_FLOW_H_
#define CARPOOL_FLOW_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "carpool/expanded_graph.h"
#include "carpool/triple_index.h"

namespace carpool {

inline constexpr double kConservationTolerance = 1e-9;
inline constexpr double kPricePairTolerance = 1e-12;

// Per-session flow, one nonnegative entry per triple (packets per unit time).
struct FlowVector {
  std::size_t session = 0;
  std::vector<double> values;

  friend bool operator==(const FlowVector&, const FlowVector&) = default;
};

// One price per triple: the cost charged by the middle node for relaying a
// unit of flow in that direction.
struct PriceVector {
  std::vector<double> values;

  friend bool operator==(const PriceVector&, const PriceVector&) = default;
};

FlowVector ZeroFlow(std::size_t session, const TripleIndex& index);

// Conservation residual per ordered pair (indexed like
// ExpandedGraph::PairIndex): flow leaving pair (i, j) through j, minus flow
// arriving into (i, j) through i, minus the session's supply term.
std::vector<double> ConservationResidual(const FlowVector& flow,
                                         const ExpandedGraph& graph,
                                         const TripleIndex& index);

double MaxAbsResidual(std::span<const FlowVector> flows, const ExpandedGraph& graph,
                      const TripleIndex& index);

// Sum over sessions of flow on each triple, accumulated in session order.
std::vector<double> AggregateFlow(std::span<const FlowVector> flows,
                                  std::size_t num_triples);

// Transmissions of `middle` serving the unordered neighbor pair {v, w}
// (v < w). With reverse carpooling one broadcast serves a packet in each
// direction, so the pair needs max(forward, backward) transmissions.
struct PairTransmission {
  int middle = 0;
  int v = 0;
  int w = 0;
  double forward = 0.0;   // v -> w
  double backward = 0.0;  // w -> v
  double y = 0.0;
  double saving = 0.0;    // transmissions avoided by coding
};

struct TransmissionSummary {
  // Ordered by (middle, v, w).
  std::vector<PairTransmission> pairs;
  // Total transmissions per expanded-graph node.
  std::vector<double> z;
};

TransmissionSummary SummarizeTransmissions(std::span<const FlowVector> flows,
                                           const ExpandedGraph& graph,
                                           const TripleIndex& index);

struct CostBreakdown {
  // Objective on the expanded graph: sum of c_i z_i.
  double expanded = 0.0;
  // What the physical network pays: deliveries to the artificial
  // destinations are not real transmissions and are subtracted.
  double physical = 0.0;
};

CostBreakdown TotalCost(const TransmissionSummary& summary, const ExpandedGraph& graph);

// Constant gap between the two objectives: sum over sessions of
// c(dest) * rate.
double DestinationCorrection(const ExpandedGraph& graph);

struct FlowEvaluation {
  TransmissionSummary summary;
  CostBreakdown cost;
  double max_residual = 0.0;
  double min_flow = 0.0;
  // Conservation holds within kConservationTolerance and no entry is negative.
  bool feasible = false;
};

FlowEvaluation EvaluateFlows(std::span<const FlowVector> flows, const ExpandedGraph& graph,
                             const TripleIndex& index);

// Empty when `prices` lies in the dual feasible set: every entry in
// [0, c_i] and p(v,i,w) + p(w,i,v) = c_i within `tolerance`. Otherwise one
// message per violated triple.
std::vector<std::string> DualFeasibilityViolations(
    const PriceVector& prices, const ExpandedGraph& graph, const TripleIndex& index,
    double tolerance = kPricePairTolerance);

}  // namespace carpool

#endif  // CARPOOL_FLOW_H_
