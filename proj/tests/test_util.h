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

#ifndef CARPOOL_TESTS_TEST_UTIL_H_
#define CARPOOL_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "carpool/edge_graph.h"
#include "carpool/expanded_graph.h"
#include "carpool/flow.h"
#include "carpool/instance.h"
#include "carpool/triple_index.h"

namespace carpool::test {

// Owns the derived structures of one instance.
struct Built {
  explicit Built(const Instance& inst)
      : instance(inst), graph(BuildExpandedGraph(inst)), index(graph), edges(graph, index) {}
  Built(const Built&) = delete;
  Built& operator=(const Built&) = delete;

  Instance instance;
  ExpandedGraph graph;
  TripleIndex index;
  EdgeGraph edges;
};

// Random dual-feasible prices: p(v,i,w) = u c_i, p(w,i,v) = (1 - u) c_i.
// With `dyadic` the split u is a multiple of 1/8 so path sums are exact.
inline PriceVector RandomFeasiblePrices(const ExpandedGraph& graph, const TripleIndex& index,
                                        std::uint32_t seed, bool dyadic = false) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> eighth(0, 8);
  PriceVector p{std::vector<double>(index.size(), 0.0)};
  for (std::size_t k = 0; k < index.size(); ++k) {
    const Triple& t = index[k];
    if (t.from > t.to) continue;
    const double c = graph.cost(t.middle);
    const double u = dyadic ? eighth(gen) / 8.0 : unit(gen);
    p.values[k] = u * c;
    p.values[index.Reverse(k)] = c - p.values[k];
  }
  return p;
}

inline Instance Line(int n, double cost = 1.0) {
  Instance inst;
  for (int v = 0; v < n; ++v) inst.nodes.push_back({v, cost, std::nullopt});
  for (int v = 0; v + 1 < n; ++v) inst.edges.emplace_back(v, v + 1);
  return inst;
}

inline Instance Grid(int rows, int cols) {
  Instance inst;
  for (int v = 0; v < rows * cols; ++v) inst.nodes.push_back({v, 1.0, std::nullopt});
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) inst.edges.emplace_back(v, v + 1);
      if (r + 1 < rows) inst.edges.emplace_back(v, v + cols);
    }
  }
  return inst;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("carpool_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace carpool::test

#endif  // CARPOOL_TESTS_TEST_UTIL_H_
