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

#ifndef CARPOOL_TOOLS_CLI_COMMANDS_H_
#define CARPOOL_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "carpool/dual_solver.h"
#include "carpool/instance.h"
#include "cli/io.h"

namespace carpool::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUncertified = 2;

struct GenOptions {
  std::optional<std::string> builtin;
  double side = 6.0;
  int sessions = 4;
  double rate = 1.0;
  double cost = 1.0;
  std::uint64_t seed = 1;
  std::string out_path;
};

struct SolveOptions {
  std::string instance_path;
  std::optional<std::string> builtin;
  double tolerance = 1e-2;
  int max_iterations = 5000;
  double step_a = 1.0;
  bool constant_step = false;
  std::optional<std::string> trace_path;
  std::optional<std::string> out_path;
  bool distributed = false;
  std::optional<std::uint64_t> schedule_seed;
};

struct InstanceSource {
  std::string path;
  std::optional<std::string> builtin;
};

int RunGen(const GenOptions& options, std::ostream& out);
int RunSolve(const SolveOptions& options, std::ostream& out);
int RunBaseline(const InstanceSource& source, std::ostream& out);
int RunCheck(const std::string& instance_path, const std::string& solution_path,
             std::ostream& out);

// Independent re-verification of a loaded solution. Returns one line per
// violated constraint; empty means the solution checks out.
std::vector<std::string> CheckSolution(const Instance& instance, const LoadedSolution& solution);

// Full command-line entry point. Errors go to `err` and map to exit 1.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace carpool::cli

#endif  // CARPOOL_TOOLS_CLI_COMMANDS_H_
