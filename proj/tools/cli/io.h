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

#ifndef CARPOOL_TOOLS_CLI_IO_H_
#define CARPOOL_TOOLS_CLI_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "carpool/dual_solver.h"
#include "carpool/errors.h"
#include "carpool/expanded_graph.h"
#include "carpool/flow.h"
#include "carpool/instance.h"
#include "carpool/triple_index.h"

namespace carpool::cli {

// Malformed input file. The message carries a position: a JSON pointer such
// as "/nodes/2/cost", or the byte offset of a syntax error.
class InputError : public Error {
 public:
  using Error::Error;
};

Instance InstanceFromJson(const nlohmann::json& doc);
nlohmann::json InstanceToJson(const Instance& instance);
Instance ReadInstanceFile(const std::string& path);
void WriteInstanceFile(const std::string& path, const Instance& instance);

// Everything a solve run reports about its recovered point.
struct SolutionReport {
  Solution solution;
  double routing_cost = 0.0;
  double tolerance = 0.0;
};

nlohmann::json SolutionToJson(const SolutionReport& report, const ExpandedGraph& graph,
                              const TripleIndex& index);

// A solution file mapped back onto an instance's triple index.
struct LoadedSolution {
  std::vector<FlowVector> flows;
  PriceVector prices;
  struct PairY {
    int middle = 0;
    int v = 0;
    int w = 0;
    double y = 0.0;
  };
  std::vector<PairY> pairs;
  std::vector<double> z;
  double expanded_cost = 0.0;
  double physical_cost = 0.0;
  double routing_cost = 0.0;
  double best_dual_bound = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  long long iterations = 0;
  bool certified = false;
};

// Throws InputError on malformed documents and on documents that do not fit
// the instance (unknown session ids, triples outside the graph, ...).
LoadedSolution SolutionFromJson(const nlohmann::json& doc, const ExpandedGraph& graph,
                                const TripleIndex& index);

nlohmann::json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

// Round-trip-safe JSON text, two-space indented, trailing newline.
std::string RenderJson(const nlohmann::json& doc);

inline constexpr char kTraceHeader[] =
    "iter,alpha,dual_bound,best_dual_bound,recovered_cost,rel_gap";
std::string RenderTrace(const SolveTrace& trace);

}  // namespace carpool::cli

#endif  // CARPOOL_TOOLS_CLI_IO_H_
