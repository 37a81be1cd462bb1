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

#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "carpool/dist_sim.h"
#include "carpool/errors.h"
#include "carpool/expanded_graph.h"
#include "carpool/instances.h"
#include "carpool/triple_index.h"

namespace carpool::cli {
namespace {

constexpr double kValueTolerance = 1e-9;

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string TripleText(int v, int i, int w) {
  return "[" + std::to_string(v) + "," + std::to_string(i) + "," + std::to_string(w) + "]";
}

bool Close(double a, double b) {
  return std::abs(a - b) <= kValueTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

Instance LoadInstance(const InstanceSource& source) {
  if (source.builtin) return BuiltinInstance(*source.builtin);
  return ReadInstanceFile(source.path);
}

void ConfigureLogging() {
  auto logger = spdlog::get("carpool");
  if (!logger) {
    logger = spdlog::stderr_logger_st("carpool");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
  }
  const char* env = std::getenv("CARPOOL_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") {
    logger->set_level(spdlog::level::off);
  } else if (level == "debug") {
    logger->set_level(spdlog::level::debug);
  } else {
    logger->set_level(spdlog::level::info);
  }
}

}  // namespace

int RunGen(const GenOptions& options, std::ostream& out) {
  Instance instance;
  if (options.builtin) {
    instance = BuiltinInstance(*options.builtin);
  } else {
    GeometricConfig config;
    config.side = options.side;
    config.num_sessions = options.sessions;
    config.rate = options.rate;
    config.node_cost = options.cost;
    config.seed = options.seed;
    instance = GenerateGeometric(config);
  }
  WriteInstanceFile(options.out_path, instance);
  out << "nodes " << instance.nodes.size() << " edges " << instance.edges.size()
      << " sessions " << instance.sessions.size() << "\n";
  return kExitOk;
}

int RunSolve(const SolveOptions& options, std::ostream& out) {
  const Instance instance = LoadInstance({options.instance_path, options.builtin});
  spdlog::info("instance: {} nodes, {} edges, {} sessions", instance.nodes.size(),
               instance.edges.size(), instance.sessions.size());

  SolverConfig config;
  config.step_rule = options.constant_step ? StepRule::kConstant : StepRule::kDiminishing;
  config.step_a = options.step_a;
  config.max_iterations = options.max_iterations;
  config.rel_gap_tolerance = options.tolerance;
  config.Validate();

  const ExpandedGraph graph = BuildExpandedGraph(instance);
  const TripleIndex index(graph);

  SolutionReport report;
  report.tolerance = options.tolerance;
  SolveTrace trace;
  std::optional<MessageStats> stats;
  if (options.distributed) {
    const SimSchedule schedule = options.schedule_seed
                                     ? SimSchedule::Asynchronous(*options.schedule_seed)
                                     : SimSchedule::Synchronous();
    DistributedSolveResult result = RunDistributedSolve(instance, config, schedule);
    report.solution = std::move(result.solution);
    trace = std::move(result.trace);
    stats = std::move(result.stats);
  } else {
    SolveResult result = Solve(graph, index, config);
    report.solution = std::move(result.solution);
    trace = std::move(result.trace);
  }
  report.routing_cost = PlainRoutingCost(instance).cost;
  const Solution& s = report.solution;
  for (const TraceRow& row : trace.rows) {
    spdlog::debug("iter {} alpha {:.6g} q {:.10g} best {:.10g} cost {:.10g} gap {:.6g}", row.iter,
                  row.alpha, row.dual_bound, row.best_dual_bound, row.recovered_cost,
                  row.rel_gap);
  }

  if (options.out_path) {
    WriteTextFile(*options.out_path, RenderJson(SolutionToJson(report, graph, index)));
  }
  if (options.trace_path) WriteTextFile(*options.trace_path, RenderTrace(trace));

  const double savings = report.routing_cost > 0.0
                             ? 100.0 * (report.routing_cost - s.cost.physical) / report.routing_cost
                             : 0.0;
  char line[256];
  std::snprintf(line, sizeof(line),
                "coded cost %.6g, routing cost %.6g, savings %.2f%%, gap %.3g, iterations %d, %s\n",
                s.cost.physical, report.routing_cost, savings, s.rel_gap, s.iterations,
                s.certified ? "certified" : "NOT certified");
  out << line;
  if (stats) {
    out << "messages " << stats->sent << " (label " << stats->label_messages << ", hop "
        << stats->hop_messages << ", flow " << stats->flow_messages << "), bytes "
        << stats->bytes << ", links used " << stats->links_used.size()
        << ", neighbor violations " << stats->neighbor_violations << "\n";
  }
  return s.certified ? kExitOk : kExitUncertified;
}

int RunBaseline(const InstanceSource& source, std::ostream& out) {
  const Instance instance = LoadInstance(source);
  const RoutingResult routing = PlainRoutingCost(instance);
  out << "routing cost " << Num(routing.cost) << "\n";
  for (const RoutingPath& path : routing.paths) {
    out << "session " << path.session_id << " cost " << Num(path.cost) << " path";
    for (int v : path.nodes) out << " " << v;
    out << "\n";
  }
  return kExitOk;
}

std::vector<std::string> CheckSolution(const Instance& instance, const LoadedSolution& solution) {
  std::vector<std::string> violations;
  const ExpandedGraph graph = BuildExpandedGraph(instance);
  const TripleIndex index(graph);
  const auto& sessions = graph.sessions();

  // Flow conservation and sign.
  for (std::size_t t = 0; t < solution.flows.size(); ++t) {
    const std::vector<double> residual = ConservationResidual(solution.flows[t], graph, index);
    for (std::size_t p = 0; p < residual.size(); ++p) {
      if (std::abs(residual[p]) > kConservationTolerance) {
        const auto [i, j] = graph.pair(p);
        violations.push_back("conservation: session " + sessions[t].id + " pair (" +
                             std::to_string(i) + "," + std::to_string(j) + ") residual " +
                             Num(residual[p]));
      }
    }
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (solution.flows[t].values[k] < 0.0) {
        const Triple& tr = index[k];
        violations.push_back("negative flow: session " + sessions[t].id + " triple " +
                             TripleText(tr.from, tr.middle, tr.to) + " value " +
                             Num(solution.flows[t].values[k]));
      }
    }
  }

  // Broadcast counts: every direction of a pair must fit under its y, and y
  // must not exceed the larger direction.
  const std::vector<double> total = AggregateFlow(solution.flows, index.size());
  std::map<std::tuple<int, int, int>, double> listed;
  for (const auto& p : solution.pairs) {
    if (!listed.emplace(std::make_tuple(p.middle, p.v, p.w), p.y).second) {
      violations.push_back("pair (" + std::to_string(p.v) + "," + std::to_string(p.middle) +
                           "," + std::to_string(p.w) + ") listed twice");
    }
  }
  std::vector<double> z(graph.num_nodes(), 0.0);
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Triple& tr = index[k];
    if (tr.from > tr.to) continue;
    const std::size_t r = index.Reverse(k);
    const auto it = listed.find({tr.middle, tr.from, tr.to});
    const double y = it == listed.end() ? 0.0 : it->second;
    if (total[k] > y) {
      violations.push_back("y understated: triple " + TripleText(tr.from, tr.middle, tr.to) +
                           " carries " + Num(total[k]) + " > y " + Num(y));
    }
    if (total[r] > y) {
      violations.push_back("y understated: triple " + TripleText(tr.to, tr.middle, tr.from) +
                           " carries " + Num(total[r]) + " > y " + Num(y));
    }
    if (y > std::max(total[k], total[r]) + kValueTolerance) {
      violations.push_back("y overstated: pair " + TripleText(tr.from, tr.middle, tr.to) +
                           " has y " + Num(y) + " > max flow " +
                           Num(std::max(total[k], total[r])));
    }
    z[tr.middle] += y;
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!Close(z[i], solution.z[i])) {
      violations.push_back("z mismatch: node " + std::to_string(i) + " reports " +
                           Num(solution.z[i]) + ", pairs sum to " + Num(z[i]));
    }
  }

  // Objective values, recomputed from the flows alone.
  const TransmissionSummary summary = SummarizeTransmissions(solution.flows, graph, index);
  const CostBreakdown cost = TotalCost(summary, graph);
  if (!Close(cost.expanded, solution.expanded_cost)) {
    violations.push_back("expanded cost: reported " + Num(solution.expanded_cost) +
                         ", recomputed " + Num(cost.expanded));
  }
  if (!Close(cost.physical, solution.physical_cost)) {
    violations.push_back("physical cost: reported " + Num(solution.physical_cost) +
                         ", recomputed " + Num(cost.physical));
  }
  const double routing = PlainRoutingCost(instance).cost;
  if (!Close(routing, solution.routing_cost)) {
    violations.push_back("routing cost: reported " + Num(solution.routing_cost) +
                         ", recomputed " + Num(routing));
  }
  const double gap = RelativeGap(cost.expanded, solution.best_dual_bound);
  if (!Close(gap, solution.gap)) {
    violations.push_back("gap: reported " + Num(solution.gap) + ", recomputed " + Num(gap));
  }
  if (gap < -kValueTolerance) {
    violations.push_back("dual bound " + Num(solution.best_dual_bound) +
                         " exceeds the primal cost " + Num(cost.expanded));
  }
  if (solution.certified != (solution.gap <= solution.tolerance)) {
    violations.push_back(std::string("certified flag is ") +
                         (solution.certified ? "true" : "false") + " but gap " +
                         Num(solution.gap) + " vs tolerance " + Num(solution.tolerance));
  }
  if (solution.iterations < 0) violations.push_back("negative iteration count");
  for (const std::string& v : DualFeasibilityViolations(solution.prices, graph, index,
                                                        kPricePairTolerance)) {
    violations.push_back("prices: " + v);
  }
  return violations;
}

int RunCheck(const std::string& instance_path, const std::string& solution_path,
             std::ostream& out) {
  const Instance instance = ReadInstanceFile(instance_path);
  const ExpandedGraph graph = BuildExpandedGraph(instance);
  const TripleIndex index(graph);
  LoadedSolution solution;
  try {
    solution = SolutionFromJson(ReadJsonFile(solution_path), graph, index);
  } catch (const InputError& e) {
    throw InputError(solution_path + ":" + e.what());
  }
  const std::vector<std::string> violations = CheckSolution(instance, solution);
  for (const std::string& v : violations) out << "violated: " << v << "\n";
  if (!violations.empty()) return kExitInputError;
  out << "ok\n";
  return kExitOk;
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Network-coding-aware minimum-cost routing"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string builtin;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a builtin or random geometric instance");
  gen_cmd->add_option("--builtin", builtin, "Builtin instance name");
  gen_cmd->add_option("-L,--side", gen.side, "Square side length")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--sessions", gen.sessions, "Number of sessions")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--rate", gen.rate, "Rate of every session")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cost", gen.cost, "Cost of every node")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("-o,--out", gen.out_path, "Instance file to write")->required();

  SolveOptions solve;
  std::uint64_t schedule_seed = 0;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run the dual subgradient solver");
  solve_cmd->add_option("instance", solve.instance_path, "Instance file");
  solve_cmd->add_option("--builtin", builtin, "Builtin instance instead of a file");
  solve_cmd->add_option("--tol", solve.tolerance, "Relative gap tolerance");
  solve_cmd->add_option("--max-iters", solve.max_iterations, "Iteration limit");
  solve_cmd->add_option("--step-a", solve.step_a, "Step constant a (alpha = a/n)");
  solve_cmd->add_flag("--constant-step", solve.constant_step, "Use alpha = a at every step");
  CLI::Option* trace_opt = solve_cmd->add_option("--trace", "Trace CSV to write");
  CLI::Option* out_opt = solve_cmd->add_option("-o,--out", "Solution file to write");
  solve_cmd->add_flag("--distributed", solve.distributed,
                      "Run the per-node message-passing simulation");
  CLI::Option* schedule_opt = solve_cmd->add_option(
      "--schedule", schedule_seed, "Seed of an asynchronous schedule (needs --distributed)");

  InstanceSource baseline;
  CLI::App* baseline_cmd = app.add_subcommand("baseline", "Plain shortest-path routing cost");
  baseline_cmd->add_option("instance", baseline.path, "Instance file");
  baseline_cmd->add_option("--builtin", builtin, "Builtin instance instead of a file");

  std::string check_instance;
  std::string check_solution;
  CLI::App* check_cmd = app.add_subcommand("check", "Re-verify a solution file");
  check_cmd->add_option("instance", check_instance, "Instance file")->required();
  check_cmd->add_option("solution", check_solution, "Solution file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  ConfigureLogging();
  const auto one_source = [&](const std::string& path) {
    if (builtin.empty() == path.empty()) {
      throw std::invalid_argument("give exactly one of an instance file or --builtin");
    }
  };
  try {
    if (*gen_cmd) {
      if (!builtin.empty()) gen.builtin = builtin;
      return RunGen(gen, out);
    }
    if (*solve_cmd) {
      one_source(solve.instance_path);
      if (!builtin.empty()) solve.builtin = builtin;
      if (*trace_opt) solve.trace_path = trace_opt->as<std::string>();
      if (*out_opt) solve.out_path = out_opt->as<std::string>();
      if (*schedule_opt) {
        if (!solve.distributed) throw std::invalid_argument("--schedule needs --distributed");
        solve.schedule_seed = schedule_seed;
      }
      return RunSolve(solve, out);
    }
    if (*baseline_cmd) {
      one_source(baseline.path);
      if (!builtin.empty()) baseline.builtin = builtin;
      return RunBaseline(baseline, out);
    }
    return RunCheck(check_instance, check_solution, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace carpool::cli
