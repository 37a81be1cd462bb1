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

// Projected subgradient ascent on the dual of the coded-routing LP.
//
// The dual variables are the relay prices p(v,i,w), restricted to
//   p(v,i,w) + p(w,i,v) = c_i,   p >= 0.
// Each iteration solves the priced sub-problem (one shortest path per
// session), which yields a lower bound q*(p), then moves every price pair
// along the difference of the two directional flows and projects back onto
// the segment [0, c_i]. Primal solutions are recovered by averaging the
// sub-problem flows over all iterations; the recovered flow is always
// conservation-feasible, so its cost is an upper bound and the gap to the
// best lower bound certifies optimality.

#ifndef CARPOOL_DUAL_SOLVER_H_
#define CARPOOL_DUAL_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "carpool/expanded_graph.h"
#include "carpool/flow.h"
#include "carpool/instance.h"
#include "carpool/shortest_path.h"
#include "carpool/triple_index.h"

namespace carpool {

enum class StepRule {
  kDiminishing,  // alpha_n = a / n
  kConstant,     // alpha_n = a
};

enum class InitialPriceRule {
  kHalfCost,      // p(v,i,w) = c_i / 2
  kSeededRandom,  // p(v,i,w) = u * c_i, u uniform in [0, 1] drawn from `seed`
};

struct SolverConfig {
  StepRule step_rule = StepRule::kDiminishing;
  double step_a = 1.0;
  InitialPriceRule initial_prices = InitialPriceRule::kHalfCost;
  int max_iterations = 5000;
  double rel_gap_tolerance = 1e-2;
  // Only consumed by kSeededRandom; the solver itself is deterministic.
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on a nonpositive step, tolerance or
  // iteration budget.
  void Validate() const;
  double StepSize(int iteration) const;
};

struct TraceRow {
  int iter = 0;
  double alpha = 0.0;
  double dual_bound = 0.0;
  double best_dual_bound = 0.0;
  double recovered_cost = 0.0;  // expanded objective at the averaged flow
  double rel_gap = 0.0;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
};

struct Solution {
  std::vector<FlowVector> flows;  // recovered (averaged) flow per session
  PriceVector prices;             // prices of the last iteration
  TransmissionSummary summary;
  CostBreakdown cost;
  double best_dual_bound = 0.0;
  double rel_gap = 0.0;
  int iterations = 0;
  bool certified = false;
};

struct SolveResult {
  Solution solution;
  SolveTrace trace;
};

// (cost - bound) / max(1, bound).
double RelativeGap(double cost, double bound);

PriceVector InitPrices(const ExpandedGraph& graph, const TripleIndex& index,
                       const SolverConfig& config);

// Closed-form projected update of one price pair around a relay of cost c:
// the forward price moves by alpha/2 times (forward flow - backward flow),
// is clamped to [0, c], and the backward price takes the remainder.
// Returns {p(v,i,w), p(w,i,v)}.
std::pair<double, double> ProjectedPairUpdate(double price, double forward_flow,
                                              double backward_flow, double alpha,
                                              double cost);

// Euclidean projection of (u1, u2) onto {p1 + p2 = c, p1 >= 0, p2 >= 0},
// found by comparing the objective over the KKT candidates (the line
// projection when it is feasible, and the two segment endpoints). Used as
// an independent check of ProjectedPairUpdate.
std::pair<double, double> ProjectPairReference(double u1, double u2, double c);

// One projected subgradient step with step size config.StepSize(iteration).
PriceVector SubgradientStep(const PriceVector& prices, std::span<const FlowVector> flows,
                            int iteration, const SolverConfig& config,
                            const ExpandedGraph& graph, const TripleIndex& index);

// Running per-session, per-triple mean of the sub-problem flows.
class ErgodicAverage {
 public:
  ErgodicAverage(std::size_t num_sessions, std::size_t num_triples);

  void Add(std::span<const FlowVector> flows);
  std::vector<FlowVector> Mean() const;
  int count() const { return count_; }

 private:
  std::vector<std::vector<double>> sums_;
  int count_ = 0;
};

// Mean of a nonempty history of per-iteration flows. Throws
// std::invalid_argument on an empty history.
std::vector<FlowVector> RecoverPrimal(std::span<const std::vector<FlowVector>> history);

// Supplies sub-problem solutions and applies price updates for the dual
// loop. The centralized engine keeps one price vector; the distributed
// simulator keeps prices inside its node processors.
class DualIterationEngine {
 public:
  virtual ~DualIterationEngine() = default;

  virtual SubproblemResult SolveSubproblem(int iteration) = 0;
  virtual void UpdatePrices(int iteration, double alpha,
                            std::span<const FlowVector> flows) = 0;
  virtual PriceVector Prices() const = 0;
};

// The shared iteration loop: sub-problem, bound bookkeeping, averaging,
// gap test, price update.
SolveResult RunDualLoop(const ExpandedGraph& graph, const TripleIndex& index,
                        const SolverConfig& config, DualIterationEngine& engine);

SolveResult Solve(const ExpandedGraph& graph, const TripleIndex& index,
                  const SolverConfig& config);
SolveResult Solve(const Instance& instance, const SolverConfig& config);

}  // namespace carpool

#endif  // CARPOOL_DUAL_SOLVER_H_
