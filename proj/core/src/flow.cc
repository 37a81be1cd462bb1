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

#include "carpool/flow.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace carpool {

FlowVector ZeroFlow(std::size_t session, const TripleIndex& index) {
  return FlowVector{session, std::vector<double>(index.size(), 0.0)};
}

std::vector<double> ConservationResidual(const FlowVector& flow, const ExpandedGraph& graph,
                                         const TripleIndex& index) {
  std::vector<double> residual(graph.num_pairs(), 0.0);
  for (std::size_t k = 0; k < index.size(); ++k) {
    const double x = flow.values[k];
    if (x == 0.0) continue;
    const Triple& t = index[k];
    // x(v,i,w) leaves pair (v,i) through i and enters pair (i,w).
    residual[graph.PairIndex(t.from, t.middle)] += x;
    residual[graph.PairIndex(t.middle, t.to)] -= x;
  }
  for (std::size_t p = 0; p < graph.num_pairs(); ++p) {
    const auto [i, j] = graph.pair(p);
    residual[p] -= graph.Supply(flow.session, i, j);
  }
  return residual;
}

double MaxAbsResidual(std::span<const FlowVector> flows, const ExpandedGraph& graph,
                      const TripleIndex& index) {
  double worst = 0.0;
  for (const FlowVector& f : flows) {
    for (double r : ConservationResidual(f, graph, index)) worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<double> AggregateFlow(std::span<const FlowVector> flows, std::size_t num_triples) {
  std::vector<double> total(num_triples, 0.0);
  for (const FlowVector& f : flows) {
    for (std::size_t k = 0; k < num_triples; ++k) total[k] += f.values[k];
  }
  return total;
}

TransmissionSummary SummarizeTransmissions(std::span<const FlowVector> flows,
                                           const ExpandedGraph& graph,
                                           const TripleIndex& index) {
  const std::vector<double> total = AggregateFlow(flows, index.size());
  TransmissionSummary summary;
  summary.z.assign(graph.num_nodes(), 0.0);
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Triple& t = index[k];
    if (t.from > t.to) continue;
    PairTransmission pt;
    pt.middle = t.middle;
    pt.v = t.from;
    pt.w = t.to;
    pt.forward = total[k];
    pt.backward = total[index.Reverse(k)];
    pt.y = std::max(pt.forward, pt.backward);
    pt.saving = std::min(pt.forward, pt.backward);
    summary.z[t.middle] += pt.y;
    summary.pairs.push_back(pt);
  }
  return summary;
}

double DestinationCorrection(const ExpandedGraph& graph) {
  double correction = 0.0;
  for (const ExpandedSession& s : graph.sessions()) correction += graph.cost(s.dest) * s.rate;
  return correction;
}

CostBreakdown TotalCost(const TransmissionSummary& summary, const ExpandedGraph& graph) {
  CostBreakdown cost;
  for (int i = 0; i < graph.num_original_nodes(); ++i) {
    cost.expanded += graph.cost(i) * summary.z[i];
  }
  cost.physical = cost.expanded - DestinationCorrection(graph);
  return cost;
}

FlowEvaluation EvaluateFlows(std::span<const FlowVector> flows, const ExpandedGraph& graph,
                             const TripleIndex& index) {
  FlowEvaluation eval;
  eval.summary = SummarizeTransmissions(flows, graph, index);
  eval.cost = TotalCost(eval.summary, graph);
  eval.max_residual = MaxAbsResidual(flows, graph, index);
  for (const FlowVector& f : flows) {
    for (double x : f.values) eval.min_flow = std::min(eval.min_flow, x);
  }
  eval.feasible = flows.size() == graph.num_sessions() &&
                  eval.max_residual <= kConservationTolerance && eval.min_flow >= 0.0;
  return eval;
}

std::vector<std::string> DualFeasibilityViolations(const PriceVector& prices,
                                                   const ExpandedGraph& graph,
                                                   const TripleIndex& index,
                                                   double tolerance) {
  std::vector<std::string> violations;
  if (prices.values.size() != index.size()) {
    violations.push_back("price vector has " + std::to_string(prices.values.size()) +
                         " entries, expected " + std::to_string(index.size()));
    return violations;
  }
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Triple& t = index[k];
    const double c = graph.cost(t.middle);
    const double p = prices.values[k];
    const double pair_sum = p + prices.values[index.Reverse(k)];
    if (!(p >= 0.0 && p <= c) || std::abs(pair_sum - c) > tolerance) {
      std::ostringstream out;
      out.precision(17);
      out << "triple (" << t.from << "," << t.middle << "," << t.to << "): price " << p
          << ", pair sum " << pair_sum << ", cost " << c;
      violations.push_back(out.str());
    }
  }
  return violations;
}

}  // namespace carpool
