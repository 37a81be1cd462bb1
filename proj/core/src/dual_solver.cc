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

#include "carpool/dual_solver.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "carpool/edge_graph.h"
#include "carpool/rng.h"

namespace carpool {

void SolverConfig::Validate() const {
  if (!(step_a > 0.0)) throw std::invalid_argument("step constant must be positive");
  if (!(rel_gap_tolerance > 0.0)) throw std::invalid_argument("gap tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max iterations must be at least 1");
}

double SolverConfig::StepSize(int iteration) const {
  return step_rule == StepRule::kDiminishing ? step_a / iteration : step_a;
}

double RelativeGap(double cost, double bound) {
  return (cost - bound) / std::max(1.0, bound);
}

PriceVector InitPrices(const ExpandedGraph& graph, const TripleIndex& index,
                       const SolverConfig& config) {
  PriceVector prices{std::vector<double>(index.size(), 0.0)};
  Rng rng(config.seed, 0);
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Triple& t = index[k];
    if (t.from > t.to) continue;
    const double c = graph.cost(t.middle);
    const double p =
        config.initial_prices == InitialPriceRule::kHalfCost ? c / 2 : rng.Uniform() * c;
    prices.values[k] = p;
    prices.values[index.Reverse(k)] = c - p;
  }
  return prices;
}

std::pair<double, double> ProjectedPairUpdate(double price, double forward_flow,
                                              double backward_flow, double alpha,
                                              double cost) {
  const double moved = price + alpha / 2 * (forward_flow - backward_flow);
  const double p = std::clamp(moved, 0.0, cost);
  return {p, cost - p};
}

namespace {

// Each pair is visited once, from its (v < w) member, so updating in place
// reads only pre-step prices.
void StepInPlace(PriceVector& prices, const std::vector<double>& total_flow, double alpha,
                 const ExpandedGraph& graph, const TripleIndex& index) {
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Triple& t = index[k];
    if (t.from > t.to) continue;
    const std::size_t r = index.Reverse(k);
    std::tie(prices.values[k], prices.values[r]) = ProjectedPairUpdate(
        prices.values[k], total_flow[k], total_flow[r], alpha, graph.cost(t.middle));
  }
}

}  // namespace

std::pair<double, double> ProjectPairReference(double u1, double u2, double c) {
  const auto objective = [&](double p1, double p2) {
    return (p1 - u1) * (p1 - u1) + (p2 - u2) * (p2 - u2);
  };
  std::pair<double, double> best{0.0, c};
  double best_value = objective(0.0, c);
  if (objective(c, 0.0) < best_value) {
    best = {c, 0.0};
    best_value = objective(c, 0.0);
  }
  // Stationary point of the objective on the line p1 + p2 = c.
  const double shift = (c - u1 - u2) / 2;
  const double p1 = u1 + shift;
  const double p2 = u2 + shift;
  if (p1 >= 0.0 && p2 >= 0.0 && objective(p1, p2) <= best_value) best = {p1, p2};
  return best;
}

PriceVector SubgradientStep(const PriceVector& prices, std::span<const FlowVector> flows,
                            int iteration, const SolverConfig& config,
                            const ExpandedGraph& graph, const TripleIndex& index) {
  PriceVector next = prices;
  StepInPlace(next, AggregateFlow(flows, index.size()), config.StepSize(iteration), graph,
              index);
  return next;
}

ErgodicAverage::ErgodicAverage(std::size_t num_sessions, std::size_t num_triples)
    : sums_(num_sessions, std::vector<double>(num_triples, 0.0)) {}

void ErgodicAverage::Add(std::span<const FlowVector> flows) {
  for (const FlowVector& f : flows) {
    std::vector<double>& sum = sums_[f.session];
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += f.values[k];
  }
  ++count_;
}

std::vector<FlowVector> ErgodicAverage::Mean() const {
  std::vector<FlowVector> mean;
  mean.reserve(sums_.size());
  for (std::size_t t = 0; t < sums_.size(); ++t) {
    FlowVector f{t, sums_[t]};
    if (count_ > 0) {
      for (double& x : f.values) x /= count_;
    }
    mean.push_back(std::move(f));
  }
  return mean;
}

std::vector<FlowVector> RecoverPrimal(std::span<const std::vector<FlowVector>> history) {
  if (history.empty()) throw std::invalid_argument("primal recovery needs a nonempty history");
  const std::size_t num_triples =
      history.front().empty() ? 0 : history.front().front().values.size();
  ErgodicAverage average(history.front().size(), num_triples);
  for (const std::vector<FlowVector>& flows : history) average.Add(flows);
  return average.Mean();
}

SolveResult RunDualLoop(const ExpandedGraph& graph, const TripleIndex& index,
                        const SolverConfig& config, DualIterationEngine& engine) {
  config.Validate();
  SolveResult result;
  Solution& sol = result.solution;

  if (graph.num_sessions() == 0) {
    sol.prices = engine.Prices();
    sol.summary = SummarizeTransmissions(sol.flows, graph, index);
    sol.cost = TotalCost(sol.summary, graph);
    sol.certified = true;
    return result;
  }

  ErgodicAverage average(graph.num_sessions(), index.size());
  double best_bound = -std::numeric_limits<double>::infinity();
  for (int n = 1;; ++n) {
    const SubproblemResult sub = engine.SolveSubproblem(n);
    best_bound = std::max(best_bound, sub.q_star);
    average.Add(sub.flows);
    sol.flows = average.Mean();
    sol.summary = SummarizeTransmissions(sol.flows, graph, index);
    sol.cost = TotalCost(sol.summary, graph);
    sol.best_dual_bound = best_bound;
    sol.rel_gap = RelativeGap(sol.cost.expanded, best_bound);
    sol.iterations = n;

    const double alpha = config.StepSize(n);
    result.trace.rows.push_back(
        {n, alpha, sub.q_star, best_bound, sol.cost.expanded, sol.rel_gap});

    sol.certified = sol.rel_gap <= config.rel_gap_tolerance;
    if (sol.certified || n >= config.max_iterations) break;
    engine.UpdatePrices(n, alpha, sub.flows);
  }
  sol.prices = engine.Prices();
  return result;
}

namespace {

class CentralizedEngine final : public DualIterationEngine {
 public:
  CentralizedEngine(const ExpandedGraph& graph, const TripleIndex& index,
                    const SolverConfig& config)
      : graph_(graph),
        index_(index),
        edge_graph_(graph, index),
        prices_(InitPrices(graph, index, config)) {}

  SubproblemResult SolveSubproblem(int) override {
    return SolvePrimalSubproblem(graph_, index_, edge_graph_, prices_);
  }

  void UpdatePrices(int, double alpha, std::span<const FlowVector> flows) override {
    StepInPlace(prices_, AggregateFlow(flows, index_.size()), alpha, graph_, index_);
  }

  PriceVector Prices() const override { return prices_; }

 private:
  const ExpandedGraph& graph_;
  const TripleIndex& index_;
  EdgeGraph edge_graph_;
  PriceVector prices_;
};

}  // namespace

SolveResult Solve(const ExpandedGraph& graph, const TripleIndex& index,
                  const SolverConfig& config) {
  config.Validate();
  CentralizedEngine engine(graph, index, config);
  return RunDualLoop(graph, index, config, engine);
}

SolveResult Solve(const Instance& instance, const SolverConfig& config) {
  const ExpandedGraph graph = BuildExpandedGraph(instance);
  const TripleIndex index(graph);
  return Solve(graph, index, config);
}

}  // namespace carpool
