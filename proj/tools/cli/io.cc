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

#include "cli/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace carpool::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw InputError((where.empty() ? std::string("/") : where) + ": " + what);
}

const json& Field(const json& object, const std::string& where, const char* key) {
  if (!object.is_object()) Fail(where, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) Fail(where + "/" + key, "missing");
  return *it;
}

const json& Array(const json& object, const std::string& where, const char* key) {
  const json& value = Field(object, where, key);
  if (!value.is_array()) Fail(where + "/" + key, "expected a list");
  return value;
}

long long Integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) Fail(where, "expected an integer");
  return value.get<long long>();
}

int Id(const json& value, const std::string& where) {
  const long long v = Integer(value, where);
  if (v < INT32_MIN || v > INT32_MAX) Fail(where, "integer out of range");
  return static_cast<int>(v);
}

double Real(const json& value, const std::string& where) {
  if (!value.is_number()) Fail(where, "expected a number");
  return value.get<double>();
}

std::string At(const std::string& where, std::size_t k) {
  return where + "/" + std::to_string(k);
}

json TripleJson(const Triple& t) { return json::array({t.from, t.middle, t.to}); }

std::size_t ParseTriple(const json& value, const std::string& where, const TripleIndex& index) {
  if (!value.is_array() || value.size() != 3) Fail(where, "expected [v, i, w]");
  const auto k = index.Find(Id(value[0], where + "/0"), Id(value[1], where + "/1"),
                            Id(value[2], where + "/2"));
  if (!k) Fail(where, "not a triple of the instance");
  return *k;
}

}  // namespace

Instance InstanceFromJson(const json& doc) {
  Instance instance;
  const json& nodes = Array(doc, "", "nodes");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string where = At("/nodes", k);
    Node node;
    node.id = Id(Field(nodes[k], where, "id"), where + "/id");
    node.cost = Real(Field(nodes[k], where, "cost"), where + "/cost");
    if (const auto it = nodes[k].find("pos"); it != nodes[k].end()) {
      if (!it->is_array() || it->size() != 2) Fail(where + "/pos", "expected [x, y]");
      node.pos = Point{Real((*it)[0], where + "/pos/0"), Real((*it)[1], where + "/pos/1")};
    }
    instance.nodes.push_back(node);
  }
  const json& edges = Array(doc, "", "edges");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = At("/edges", k);
    if (!edges[k].is_array() || edges[k].size() != 2) Fail(where, "expected [a, b]");
    instance.edges.emplace_back(Id(edges[k][0], where + "/0"), Id(edges[k][1], where + "/1"));
  }
  const json& sessions = Array(doc, "", "sessions");
  for (std::size_t k = 0; k < sessions.size(); ++k) {
    const std::string where = At("/sessions", k);
    Session session;
    const json& id = Field(sessions[k], where, "id");
    if (!id.is_string()) Fail(where + "/id", "expected a string");
    session.id = id.get<std::string>();
    session.source = Id(Field(sessions[k], where, "source"), where + "/source");
    session.dest = Id(Field(sessions[k], where, "dest"), where + "/dest");
    session.rate = Real(Field(sessions[k], where, "rate"), where + "/rate");
    instance.sessions.push_back(session);
  }
  ValidateInstance(instance);
  return instance;
}

json InstanceToJson(const Instance& instance) {
  json nodes = json::array();
  for (const Node& node : instance.nodes) {
    json entry = {{"id", node.id}, {"cost", node.cost}};
    if (node.pos) entry["pos"] = json::array({node.pos->x, node.pos->y});
    nodes.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const auto& [a, b] : instance.edges) edges.push_back(json::array({a, b}));
  json sessions = json::array();
  for (const Session& s : instance.sessions) {
    sessions.push_back({{"id", s.id}, {"source", s.source}, {"dest", s.dest}, {"rate", s.rate}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)},
          {"sessions", std::move(sessions)}};
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(path + ": cannot write");
}

std::string RenderJson(const json& doc) { return doc.dump(2) + "\n"; }

Instance ReadInstanceFile(const std::string& path) {
  const json doc = ReadJsonFile(path);
  try {
    return InstanceFromJson(doc);
  } catch (const InputError& e) {
    throw InputError(path + ":" + e.what());
  } catch (const InvalidInstanceError& e) {
    throw InvalidInstanceError(path + ": " + e.what());
  }
}

void WriteInstanceFile(const std::string& path, const Instance& instance) {
  WriteTextFile(path, RenderJson(InstanceToJson(instance)));
}

json SolutionToJson(const SolutionReport& report, const ExpandedGraph& graph,
                    const TripleIndex& index) {
  const Solution& s = report.solution;
  json sessions = json::array();
  for (const FlowVector& flow : s.flows) {
    json flows = json::array();
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (flow.values[k] != 0.0) {
        flows.push_back({{"triple", TripleJson(index[k])}, {"value", flow.values[k]}});
      }
    }
    sessions.push_back({{"id", graph.sessions()[flow.session].id}, {"flows", std::move(flows)}});
  }
  json pairs = json::array();
  for (const PairTransmission& p : s.summary.pairs) {
    if (p.y != 0.0) pairs.push_back({{"node", p.middle}, {"v", p.v}, {"w", p.w}, {"y", p.y}});
  }
  json prices = json::array();
  for (std::size_t k = 0; k < index.size(); ++k) {
    prices.push_back({{"triple", TripleJson(index[k])}, {"price", s.prices.values[k]}});
  }
  return {{"sessions", std::move(sessions)},
          {"z", s.summary.z},
          {"pairs", std::move(pairs)},
          {"prices", std::move(prices)},
          {"expanded_cost", s.cost.expanded},
          {"physical_cost", s.cost.physical},
          {"routing_cost", report.routing_cost},
          {"best_dual_bound", s.best_dual_bound},
          {"gap", s.rel_gap},
          {"tolerance", report.tolerance},
          {"iterations", s.iterations},
          {"certified", s.certified}};
}

LoadedSolution SolutionFromJson(const json& doc, const ExpandedGraph& graph,
                                const TripleIndex& index) {
  LoadedSolution out;
  const json& sessions = Array(doc, "", "sessions");
  if (sessions.size() != graph.num_sessions()) {
    Fail("/sessions", "has " + std::to_string(sessions.size()) + " entries, instance has " +
                          std::to_string(graph.num_sessions()));
  }
  for (std::size_t t = 0; t < sessions.size(); ++t) {
    const std::string where = At("/sessions", t);
    const json& id = Field(sessions[t], where, "id");
    if (!id.is_string() || id.get<std::string>() != graph.sessions()[t].id) {
      Fail(where + "/id", "does not match instance session " + graph.sessions()[t].id);
    }
    FlowVector flow = ZeroFlow(t, index);
    const json& flows = Array(sessions[t], where, "flows");
    for (std::size_t j = 0; j < flows.size(); ++j) {
      const std::string at = At(where + "/flows", j);
      const std::size_t k = ParseTriple(Field(flows[j], at, "triple"), at + "/triple", index);
      flow.values[k] = Real(Field(flows[j], at, "value"), at + "/value");
    }
    out.flows.push_back(std::move(flow));
  }

  const json& z = Array(doc, "", "z");
  if (z.size() != static_cast<std::size_t>(graph.num_nodes())) {
    Fail("/z", "has " + std::to_string(z.size()) + " entries, expanded graph has " +
                   std::to_string(graph.num_nodes()) + " nodes");
  }
  for (std::size_t i = 0; i < z.size(); ++i) out.z.push_back(Real(z[i], At("/z", i)));

  const json& pairs = Array(doc, "", "pairs");
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const std::string at = At("/pairs", j);
    LoadedSolution::PairY p;
    p.middle = Id(Field(pairs[j], at, "node"), at + "/node");
    p.v = Id(Field(pairs[j], at, "v"), at + "/v");
    p.w = Id(Field(pairs[j], at, "w"), at + "/w");
    p.y = Real(Field(pairs[j], at, "y"), at + "/y");
    if (p.v >= p.w || !index.Find(p.v, p.middle, p.w)) Fail(at, "not a pair of the instance");
    out.pairs.push_back(p);
  }

  out.prices.values.assign(index.size(), 0.0);
  std::vector<char> priced(index.size(), 0);
  const json& prices = Array(doc, "", "prices");
  for (std::size_t j = 0; j < prices.size(); ++j) {
    const std::string at = At("/prices", j);
    const std::size_t k = ParseTriple(Field(prices[j], at, "triple"), at + "/triple", index);
    out.prices.values[k] = Real(Field(prices[j], at, "price"), at + "/price");
    priced[k] = 1;
  }
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (!priced[k]) {
      const Triple& t = index[k];
      Fail("/prices", "no price for triple [" + std::to_string(t.from) + "," +
                          std::to_string(t.middle) + "," + std::to_string(t.to) + "]");
    }
  }

  out.expanded_cost = Real(Field(doc, "", "expanded_cost"), "/expanded_cost");
  out.physical_cost = Real(Field(doc, "", "physical_cost"), "/physical_cost");
  out.routing_cost = Real(Field(doc, "", "routing_cost"), "/routing_cost");
  out.best_dual_bound = Real(Field(doc, "", "best_dual_bound"), "/best_dual_bound");
  out.gap = Real(Field(doc, "", "gap"), "/gap");
  out.tolerance = Real(Field(doc, "", "tolerance"), "/tolerance");
  out.iterations = Integer(Field(doc, "", "iterations"), "/iterations");
  const json& certified = Field(doc, "", "certified");
  if (!certified.is_boolean()) Fail("/certified", "expected true or false");
  out.certified = certified.get<bool>();
  return out;
}

std::string RenderTrace(const SolveTrace& trace) {
  std::string text = std::string(kTraceHeader) + "\n";
  char line[256];
  for (const TraceRow& row : trace.rows) {
    std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", row.iter, row.alpha,
                  row.dual_bound, row.best_dual_bound, row.recovered_cost, row.rel_gap);
    text += line;
  }
  return text;
}

}  // namespace carpool::cli
