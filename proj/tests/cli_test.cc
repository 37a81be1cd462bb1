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

#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "carpool/errors.h"
#include "carpool/instances.h"
#include "cli/commands.h"
#include "cli/io.h"
#include "test_util.h"

namespace carpool::cli {
namespace {

using nlohmann::json;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "carpool");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { setenv("CARPOOL_LOG", "quiet", 1); }
  test::TempDir dir_{"cli"};
};

TEST(InstanceJsonTest, RoundTrip) {
  std::vector<Instance> cases;
  for (const auto& named : BuiltinInstances()) cases.push_back(named.instance);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GeometricConfig cfg;
    cfg.seed = seed;
    cfg.rate = 0.1 * static_cast<double>(seed);
    cases.push_back(GenerateGeometric(cfg));
  }
  for (const Instance& inst : cases) {
    const json doc = json::parse(RenderJson(InstanceToJson(inst)));
    EXPECT_EQ(InstanceFromJson(doc), inst);
  }
}

TEST(InstanceJsonTest, ErrorsCarryPositions) {
  const auto message = [](const std::string& text) -> std::string {
    try {
      InstanceFromJson(json::parse(text));
    } catch (const Error& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_EQ(message(R"({"nodes":[{"id":0,"cost":1},{"id":1}],"edges":[],"sessions":[]})"),
            "/nodes/1/cost: missing");
  EXPECT_EQ(message(R"({"nodes":[],"edges":[[0]],"sessions":[]})"), "/edges/0: expected [a, b]");
  EXPECT_EQ(message(R"({"nodes":[],"edges":[],"sessions":[{"id":1}]})"),
            "/sessions/0/id: expected a string");
  EXPECT_EQ(message(R"({"edges":[],"sessions":[]})"), "/nodes: missing");
  EXPECT_EQ(message(R"({"nodes":[{"id":0,"cost":1}],"edges":[[0,0]],"sessions":[]})"),
            "edges[0]: self-loop on node 0");
}

TEST(TraceTest, HeaderAndPrecision) {
  SolveTrace trace;
  trace.rows.push_back({1, 1.0, 1.0 / 3.0, 1.0 / 3.0, 2.0, 0.5});
  const std::string text = RenderTrace(trace);
  EXPECT_EQ(text,
            "iter,alpha,dual_bound,best_dual_bound,recovered_cost,rel_gap\n"
            "1,1,0.333333333333,0.333333333333,2,0.5\n");
}

TEST_F(CliTest, GenBuiltinAndDeterminism) {
  const CliRun r = Cli({"gen", "--builtin", "relay3", "-o", dir_.file("r.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "nodes 3 edges 2 sessions 2\n");
  EXPECT_EQ(ReadInstanceFile(dir_.file("r.json")), BuiltinInstance("relay3"));

  for (const char* name : {"a.json", "b.json"}) {
    EXPECT_EQ(Cli({"gen", "-L", "6", "--sessions", "4", "--seed", "7", "-o", dir_.file(name)}).code,
              kExitOk);
  }
  EXPECT_EQ(test::ReadFile(dir_.file("a.json")), test::ReadFile(dir_.file("b.json")));
}

TEST_F(CliTest, GenFailureExitsOne) {
  const CliRun r = Cli({"gen", "-L", "0.1", "--sessions", "3", "-o", dir_.file("x.json")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("retry budget exhausted"), std::string::npos);
}

TEST_F(CliTest, SolveRelaySummaryAndFiles) {
  const CliRun r = Cli({"solve", "--builtin", "relay3", "-o", dir_.file("s.json"), "--trace",
                     dir_.file("t.csv")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("coded cost 3, routing cost 4, savings 25.00%"), std::string::npos) << r.out;
  const std::string trace = test::ReadFile(dir_.file("t.csv"));
  EXPECT_EQ(trace.rfind(std::string(kTraceHeader) + "\n", 0), 0u);
  const json sol = ReadJsonFile(dir_.file("s.json"));
  EXPECT_EQ(sol["physical_cost"], 3.0);
  EXPECT_EQ(sol["routing_cost"], 4.0);
  EXPECT_EQ(sol["certified"], true);
}

TEST_F(CliTest, DistributedSolutionBytesMatchCentralized) {
  WriteInstanceFile(dir_.file("g.json"), BuiltinInstance("grid2"));
  const std::vector<std::string> base{"solve", dir_.file("g.json"), "--max-iters", "120"};
  auto with = [&](std::vector<std::string> extra, const std::string& out) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    args.push_back("-o");
    args.push_back(dir_.file(out));
    return Cli(args);
  };
  const CliRun central = with({}, "c.json");
  const CliRun sync = with({"--distributed"}, "d.json");
  const CliRun async = with({"--distributed", "--schedule", "17"}, "a.json");
  EXPECT_EQ(central.code, sync.code);
  EXPECT_NE(sync.out.find("neighbor violations 0"), std::string::npos);
  EXPECT_EQ(test::ReadFile(dir_.file("c.json")), test::ReadFile(dir_.file("d.json")));
  EXPECT_EQ(test::ReadFile(dir_.file("c.json")), test::ReadFile(dir_.file("a.json")));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli({"solve", "--builtin", "geo27", "--max-iters", "5"}).code, kExitUncertified);
  EXPECT_EQ(Cli({"solve", dir_.file("missing.json")}).code, kExitInputError);
  EXPECT_EQ(Cli({"solve"}).code, kExitInputError);
  EXPECT_EQ(Cli({"solve", "--builtin", "relay3", "--schedule", "3"}).code, kExitInputError);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, IsolatedDestination) {
  Instance inst = test::Line(3);
  inst.nodes.push_back({3, 1.0, std::nullopt});
  inst.sessions = {{"1", 0, 2, 1.0}, {"2", 0, 3, 1.0}};
  WriteInstanceFile(dir_.file("iso.json"), inst);
  const CliRun r = Cli({"solve", dir_.file("iso.json")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("session 2 unreachable"), std::string::npos) << r.err;
}

TEST_F(CliTest, ParseErrorNamesFileAndPosition) {
  WriteTextFile(dir_.file("bad.json"), "{\"nodes\": [ {\"id\": 0, }");
  const CliRun r = Cli({"baseline", dir_.file("bad.json")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("bad.json"), std::string::npos);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, Baseline) {
  WriteInstanceFile(dir_.file("r.json"), BuiltinInstance("relay3"));
  const CliRun r = Cli({"baseline", dir_.file("r.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "routing cost 4\n"
            "session 1 cost 2 path 0 1 2\n"
            "session 2 cost 2 path 2 1 0\n");
  Instance empty = test::Line(2);
  WriteInstanceFile(dir_.file("e.json"), empty);
  EXPECT_EQ(Cli({"baseline", dir_.file("e.json")}).out, "routing cost 0\n");
}

class CheckTest : public CliTest {
 protected:
  void SetUp() override {
    CliTest::SetUp();
    WriteInstanceFile(dir_.file("i.json"), BuiltinInstance("grid2"));
    ASSERT_EQ(Cli({"solve", dir_.file("i.json"), "--tol", "1e-3", "-o", dir_.file("s.json")}).code,
              kExitOk);
    solution_ = ReadJsonFile(dir_.file("s.json"));
  }

  CliRun CheckWith(const json& doc) {
    WriteTextFile(dir_.file("p.json"), RenderJson(doc));
    return Cli({"check", dir_.file("i.json"), dir_.file("p.json")});
  }

  json solution_;
};

TEST_F(CheckTest, AcceptsSolveOutput) {
  const CliRun r = Cli({"check", dir_.file("i.json"), dir_.file("s.json")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out, "ok\n");
}

TEST_F(CheckTest, PerturbedFlowNamesConservationPair) {
  json doc = solution_;
  json& entry = doc["sessions"][0]["flows"][2];
  entry["value"] = entry["value"].get<double>() + 0.1;
  const CliRun r = CheckWith(doc);
  EXPECT_EQ(r.code, kExitInputError);
  const auto t = entry["triple"];
  const std::string pair = "pair (" + std::to_string(t[0].get<int>()) + "," +
                           std::to_string(t[1].get<int>()) + ")";
  EXPECT_NE(r.out.find("conservation: session 1 " + pair), std::string::npos) << r.out;
}

TEST_F(CheckTest, UnderstatedYNamesTriple) {
  json doc = solution_;
  json& p = doc["pairs"][0];
  p["y"] = p["y"].get<double>() - 0.05;
  const CliRun r = CheckWith(doc);
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.out.find("y understated: triple ["), std::string::npos) << r.out;
}

TEST_F(CheckTest, RejectsEveryScalarPerturbation) {
  for (const char* key : {"expanded_cost", "physical_cost", "routing_cost", "gap"}) {
    json doc = solution_;
    doc[key] = doc[key].get<double>() + 1e-6;
    EXPECT_EQ(CheckWith(doc).code, kExitInputError) << key;
  }
  json bound = solution_;
  bound["best_dual_bound"] = bound["best_dual_bound"].get<double>() + 1e-3;
  EXPECT_EQ(CheckWith(bound).code, kExitInputError);
  json flag = solution_;
  flag["certified"] = false;
  EXPECT_EQ(CheckWith(flag).code, kExitInputError);
  json z = solution_;
  z["z"][3] = z["z"][3].get<double>() + 1e-6;
  EXPECT_EQ(CheckWith(z).code, kExitInputError);
  json price = solution_;
  price["prices"][0]["price"] = price["prices"][0]["price"].get<double>() + 1e-6;
  EXPECT_EQ(CheckWith(price).code, kExitInputError);
  json negative = solution_;
  negative["sessions"][1]["flows"].push_back(
      {{"triple", negative["sessions"][1]["flows"][0]["triple"]}, {"value", -1e-3}});
  EXPECT_EQ(CheckWith(negative).code, kExitInputError);
}

TEST_F(CheckTest, MismatchedInstance) {
  WriteInstanceFile(dir_.file("other.json"), BuiltinInstance("relay3"));
  const CliRun r = Cli({"check", dir_.file("other.json"), dir_.file("s.json")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_FALSE(r.err.empty());
}

}  // namespace
}  // namespace carpool::cli
