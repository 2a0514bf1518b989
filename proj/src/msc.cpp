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

#include "meetsum/msc.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "meetsum/error.hpp"
#include "meetsum/linearizer.hpp"

namespace meetsum {

int WordGraph::count(int from, int to) const {
  auto it = edges.find({from, to});
  return it == edges.end() ? 0 : it->second;
}

std::vector<int> WordGraph::successors(int node) const {
  std::vector<int> out;
  for (auto it = edges.lower_bound({node, std::numeric_limits<int>::min()});
       it != edges.end() && it->first.first == node; ++it) {
    out.push_back(it->first.second);
  }
  return out;
}

WordGraph build_word_graph(const std::vector<Utterance>& utterances) {
  if (utterances.empty()) throw ValidationError("word graph needs at least one utterance");
  WordGraph g;
  g.nodes.push_back({0, "<start>", "START", "<start>", {}, NodeKind::kStart});
  g.nodes.push_back({1, "<end>", "END", "<end>", {}, NodeKind::kEnd});
  std::map<std::pair<std::string, std::string>, std::vector<int>> by_key;

  for (const auto& raw : utterances) {
    const std::size_t ui = g.utterances.size();
    Utterance utt = raw;
    std::erase_if(utt.tokens, [](const Token& t) { return t.is_filler; });
    for (std::size_t i = 0; i < utt.tokens.size(); ++i) utt.tokens[i].index = i;
    utt.edges.clear();

    std::vector<int> mapping;
    for (const auto& t : utt.tokens) {
      std::vector<int> candidates;
      if (auto it = by_key.find({t.norm, t.pos}); it != by_key.end()) {
        for (int c : it->second) {
          const auto& occ = g.nodes[c].occurrences;
          if (std::none_of(occ.begin(), occ.end(),
                           [&](const Occurrence& o) { return o.utterance == ui; })) {
            candidates.push_back(c);
          }
        }
      }
      int node = -1;
      if (is_mergeable(t) && candidates.size() == 1) {
        node = candidates.front();
      } else if (!candidates.empty()) {
        node = resolve_ambiguity(candidates, g.nodes, g.utterances, utt, t.index);
      }
      if (node < 0) {
        node = static_cast<int>(g.nodes.size());
        g.nodes.push_back({node, t.norm, t.pos, t.surface, {}, NodeKind::kWord});
        by_key[{t.norm, t.pos}].push_back(node);
      }
      g.nodes[node].occurrences.push_back({ui, t.index});
      mapping.push_back(node);
    }
    int prev = g.start_id;
    for (int n : mapping) {
      ++g.edges[{prev, n}];
      prev = n;
    }
    ++g.edges[{prev, g.end_id}];
    g.utterances.push_back(std::move(utt));
    g.token_node.push_back(std::move(mapping));
  }
  return g;
}

double path_cost(const WordGraph& g, const std::vector<int>& path) {
  double cost = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int c = g.count(path[i], path[i + 1]);
    if (c <= 0) throw ValidationError("path uses a missing edge");
    cost += 1.0 / c;
  }
  return cost;
}

namespace {

std::vector<int> dijkstra(const WordGraph& g, int source, const std::set<int>& banned_nodes,
                          const std::set<std::pair<int, int>>& banned_edges) {
  const std::size_t n = g.nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n, -1);
  std::set<std::pair<double, int>> queue;
  dist[source] = 0;
  queue.insert({0.0, source});
  while (!queue.empty()) {
    const auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    if (v == g.end_id) break;
    for (int w : g.successors(v)) {
      if (banned_nodes.count(w) || banned_edges.count({v, w})) continue;
      const double nd = d + 1.0 / g.count(v, w);
      if (nd < dist[w]) {
        queue.erase({dist[w], w});
        dist[w] = nd;
        prev[w] = v;
        queue.insert({nd, w});
      }
    }
  }
  if (prev[g.end_id] < 0 && source != g.end_id) return {};
  std::vector<int> path;
  for (int v = g.end_id; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<std::vector<int>> k_shortest_paths(const WordGraph& g, std::size_t k) {
  std::vector<std::vector<int>> found;
  if (k == 0) return found;
  auto first = dijkstra(g, g.start_id, {}, {});
  if (first.empty()) throw ValidationError("word graph has no start-to-end path");
  found.push_back(std::move(first));

  std::set<std::pair<double, std::vector<int>>> candidates;
  while (found.size() < k) {
    const auto& last = found.back();
    for (std::size_t j = 0; j + 1 < last.size(); ++j) {
      const std::vector<int> root(last.begin(), last.begin() + static_cast<long>(j) + 1);
      std::set<std::pair<int, int>> banned_edges;
      for (const auto& p : found) {
        if (p.size() > j + 1 && std::equal(root.begin(), root.end(), p.begin())) {
          banned_edges.insert({p[j], p[j + 1]});
        }
      }
      const std::set<int> banned_nodes(root.begin(), root.end() - 1);
      const auto spur = dijkstra(g, last[j], banned_nodes, banned_edges);
      if (spur.empty()) continue;
      std::vector<int> total = root;
      total.insert(total.end(), spur.begin() + 1, spur.end());
      candidates.insert({path_cost(g, total), std::move(total)});
    }
    // Drop candidates that were already accepted.
    while (!candidates.empty() &&
           std::find(found.begin(), found.end(), candidates.begin()->second) != found.end()) {
      candidates.erase(candidates.begin());
    }
    if (candidates.empty()) break;
    found.push_back(candidates.begin()->second);
    candidates.erase(candidates.begin());
  }
  return found;
}

MscResult best_path(const WordGraph& g, const MscConfig& cfg) {
  const auto paths = k_shortest_paths(g, std::max<std::size_t>(cfg.k, 1));
  auto words_of = [&](const std::vector<int>& p) {
    return std::vector<int>(p.begin() + 1, p.end() - 1);
  };
  int best = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto w = words_of(paths[i]);
    if (w.size() < cfg.min_len) continue;
    const bool has_verb = std::any_of(w.begin(), w.end(),
                                      [&](int n) { return is_verb_pos(g.nodes[n].pos); });
    if (!has_verb) continue;
    const double score = path_cost(g, paths[i]) / static_cast<double>(w.size());
    if (score < best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  MscResult r;
  if (best < 0) {
    best = 0;
    r.below_min_length = true;
  }
  r.nodes = words_of(paths[best]);
  r.cost = path_cost(g, paths[best]);
  for (int n : r.nodes) r.words.push_back(g.nodes[n].surface);
  r.text = render_sentence(r.words);
  return r;
}

}  // namespace meetsum
