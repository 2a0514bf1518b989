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

#include <map>
#include <string>
#include <vector>

#include "meetsum/fusion_graph.hpp"
#include "meetsum/ilp.hpp"

namespace meetsum {

// Unit-weight distance from start for every node touched by a retained edge.
// Throws ValidationError if some retained node cannot be reached.
std::map<int, int> root_distances(const MergedGraph& graph, const std::vector<int>& retained);

struct MergeStep {
  int governor = 0;
  std::vector<int> order;  // resulting block, governor included
};

struct Sentence {
  std::vector<int> nodes;          // word nodes in output order
  std::vector<std::string> words;  // surface forms
  std::string text;
  std::vector<MergeStep> trace;
};

// Bottom-up merging of leaf blocks into their governors, deepest governor
// first. Within a merge, blocks follow the source order relative to the
// governor in the utterance that supports the edge.
Sentence linearize(const MergedGraph& graph, const std::vector<int>& retained);

std::string render_sentence(const std::vector<std::string>& words);

}  // namespace meetsum
