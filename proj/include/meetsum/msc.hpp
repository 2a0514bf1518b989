// Copyright 2026 The meetsum Authors
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

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "meetsum/fusion_graph.hpp"

namespace meetsum {

// Adjacency word graph: one path per utterance between the start and end
// dummies, with repeated words collapsed onto shared nodes.
struct WordGraph {
  std::vector<GraphNode> nodes;              // frequency = occurrences.size()
  std::map<std::pair<int, int>, int> edges;  // adjacency -> co-occurrence count
  int start_id = 0;
  int end_id = 1;
  std::vector<Utterance> utterances;
  std::vector<std::vector<int>> token_node;

  int count(int from, int to) const;
  std::vector<int> successors(int node) const;
};

// Content words merge as in the dependency graph. Function words merge
// only when some candidate shares strictly more context than the others.
WordGraph build_word_graph(const std::vector<Utterance>& utterances);

struct MscResult {
  std::vector<int> nodes;  // path without the dummies
  std::vector<std::string> words;
  std::string text;
  double cost = 0;
  bool below_min_length = false;
};

struct MscConfig {
  std::size_t min_len = 8;
  std::size_t k = 50;
};

// Up to k loopless start-to-end paths by total cost, cheapest first.
// Edge cost is 1/count.
std::vector<std::vector<int>> k_shortest_paths(const WordGraph& g, std::size_t k);

double path_cost(const WordGraph& g, const std::vector<int>& path);

// Among the k cheapest paths, the lowest cost per word with at least
// min_len words and a verb; otherwise the cheapest path, flagged.
MscResult best_path(const WordGraph& g, const MscConfig& cfg = {});

}  // namespace meetsum
