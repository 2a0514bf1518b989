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

#include "meetsum/linearizer.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <tuple>

#include "meetsum/error.hpp"

namespace meetsum {

std::map<int, int> root_distances(const MergedGraph& graph, const std::vector<int>& retained) {
  std::map<int, std::vector<int>> children;
  std::set<int> touched;
  for (int id : retained) {
    const auto& e = graph.edges.at(static_cast<std::size_t>(id));
    children[e.gov].push_back(e.dep);
    touched.insert(e.gov);
    touched.insert(e.dep);
  }
  std::map<int, int> dist;
  std::deque<int> queue{graph.start_id};
  dist[graph.start_id] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int c : children[v]) {
      if (dist.count(c)) continue;
      dist[c] = dist[v] + 1;
      queue.push_back(c);
    }
  }
  for (int v : touched) {
    if (!dist.count(v)) {
      throw ValidationError("node " + std::to_string(v) + " is not reachable from start");
    }
  }
  return dist;
}

namespace {

int token_of(const MergedGraph& g, std::size_t utterance, int node) {
  const auto& map = g.token_node.at(utterance);
  for (std::size_t t = 0; t < map.size(); ++t) {
    if (map[t] == node) return static_cast<int>(t);
  }
  return -1;
}

Occurrence anchor_of(const GraphNode& n) {
  if (n.occurrences.empty()) return {};
  return *std::min_element(n.occurrences.begin(), n.occurrences.end());
}

}  // namespace

std::string render_sentence(const std::vector<std::string>& words) {
  if (words.empty()) return "";
  std::string text;
  for (const auto& w : words) {
    if (!text.empty()) text.push_back(' ');
    text += w;
  }
  text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  return text + ".";
}

Sentence linearize(const MergedGraph& graph, const std::vector<int>& retained) {
  const auto dist = root_distances(graph, retained);

  // Word-to-word edges only; the dummies never appear in the output.
  std::map<int, std::vector<int>> children;  // gov -> retained edge ids
  int root = -1;
  for (int id : retained) {
    const auto& e = graph.edges[id];
    if (e.gov == graph.start_id) {
      root = e.dep;
    } else if (e.dep != graph.end_id) {
      children[e.gov].push_back(id);
    }
  }
  Sentence out;
  if (root < 0 || root == graph.end_id) return out;

  std::map<int, std::vector<int>> block;  // node -> its fixed block
  for (const auto& [node, d] : dist) {
    if (!graph.is_dummy(node)) block[node] = {node};
  }
  std::set<int> pending;
  for (const auto& [gov, ids] : children) pending.insert(gov);

  while (!pending.empty()) {
    // Deepest governor first; its children are leaves by construction.
    const int gov = *std::max_element(pending.begin(), pending.end(), [&](int a, int b) {
      return std::make_pair(dist.at(a), -a) < std::make_pair(dist.at(b), -b);
    });
    pending.erase(gov);

    using Key = std::tuple<int, Occurrence, int>;
    std::vector<std::pair<Key, int>> parts;
    parts.push_back({Key{0, anchor_of(graph.nodes[gov]), gov}, gov});
    for (int id : children[gov]) {
      const auto& e = graph.edges[id];
      const std::size_t u = e.support.front() - 1;
      const int offset = token_of(graph, u, e.dep) - token_of(graph, u, gov);
      parts.push_back({Key{offset, anchor_of(graph.nodes[e.dep]), e.dep}, e.dep});
    }
    std::sort(parts.begin(), parts.end());

    std::vector<int> merged;
    for (const auto& [key, node] : parts) {
      const auto& b = block[node];
      merged.insert(merged.end(), b.begin(), b.end());
      if (node != gov) block.erase(node);
    }
    block[gov] = merged;
    out.trace.push_back({gov, merged});
  }

  out.nodes = block.at(root);
  for (int n : out.nodes) out.words.push_back(graph.nodes[n].surface);
  out.text = render_sentence(out.words);
  return out;
}

}  // namespace meetsum
