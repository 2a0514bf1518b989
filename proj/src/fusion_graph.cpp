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

#include "meetsum/fusion_graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "meetsum/error.hpp"

namespace meetsum {

bool is_mergeable(const Token& t) {
  return t.is_content && !t.is_filler && !is_stopword(t.norm);
}

Utterance strip_for_fusion(const Utterance& utt, const Lexicon& lexicon) {
  const std::size_t n = utt.tokens.size();
  std::vector<bool> keep(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = utt.tokens[i];
    keep[i] = !lexicon.is_filler(t.norm) && !is_punctuation_pos(t.pos);
  }
  std::vector<int> head(n, kRootGovernor);
  std::vector<std::string> label(n, "dep");
  for (const auto& e : utt.edges) {
    head[e.dependent] = e.governor;
    label[e.dependent] = e.label;
  }
  // Nearest surviving ancestor for each kept token.
  auto surviving_head = [&](int i) {
    int h = head[i];
    std::size_t guard = 0;
    while (h != kRootGovernor && !keep[h] && guard++ <= n) h = head[h];
    return h;
  };
  std::vector<int> new_index(n, -1);
  Utterance out;
  out.id = utt.id;
  out.speaker = utt.speaker;
  out.position = utt.position;
  out.gold_in_summary = utt.gold_in_summary;
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    new_index[i] = static_cast<int>(out.tokens.size());
    Token t = utt.tokens[i];
    t.index = out.tokens.size();
    out.tokens.push_back(std::move(t));
  }
  bool has_root = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    const int h = surviving_head(static_cast<int>(i));
    DependencyEdge e;
    e.dependent = new_index[i];
    e.label = label[i];
    if (h == kRootGovernor) {
      if (has_root) {
        // The original root was dropped; later orphans hang off the new one.
        e.governor = out.root_index();
      } else {
        e.governor = kRootGovernor;
        e.label = "root";
        has_root = true;
      }
    } else {
      e.governor = new_index[h];
    }
    out.edges.push_back(std::move(e));
  }
  return out;
}

namespace {

bool is_subject_or_object(std::string_view label) {
  static const std::unordered_set<std::string_view> kArgs{
      "nsubj", "nsubjpass", "dobj", "iobj", "pobj", "xsubj", "obj", "nsubj:pass", "iobj"};
  return kArgs.count(label) > 0 || label.substr(0, 5) == "prep_";
}

bool is_plural_noun(std::string_view pos) { return pos == "NNS" || pos == "NNPS"; }

struct Antecedent {
  std::vector<std::size_t> tokens;  // sorted, includes head
  std::size_t head = 0;
  bool plural = false;
};

std::optional<Antecedent> find_antecedent(const Utterance& prev) {
  for (std::size_t k = prev.tokens.size(); k-- > 0;) {
    const auto& t = prev.tokens[k];
    if (!is_noun_pos(t.pos) || t.is_filler) continue;
    const auto* he = prev.head_edge(k);
    if (he && (he->label == "nn" || he->label == "compound")) continue;
    Antecedent a;
    a.head = k;
    a.plural = is_plural_noun(t.pos);
    a.tokens.push_back(k);
    for (const auto& e : prev.edges) {
      if (e.governor == static_cast<int>(k) &&
          (e.label == "det" || e.label == "amod" || e.label == "nn" || e.label == "compound")) {
        a.tokens.push_back(static_cast<std::size_t>(e.dependent));
      }
    }
    std::sort(a.tokens.begin(), a.tokens.end());
    return a;
  }
  return std::nullopt;
}

Utterance substitute(const Utterance& utt, const std::vector<std::size_t>& pronouns,
                     const Utterance& prev, const Antecedent& ante) {
  const std::size_t n = utt.tokens.size();
  std::vector<int> map_index(n, -1);
  std::vector<bool> is_pronoun(n, false);
  for (auto p : pronouns) is_pronoun[p] = true;

  Utterance out = utt;
  out.tokens.clear();
  out.edges.clear();
  std::vector<DependencyEdge> inner;  // antecedent-internal edges
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_pronoun[i]) {
      map_index[i] = static_cast<int>(out.tokens.size());
      Token t = utt.tokens[i];
      t.index = out.tokens.size();
      out.tokens.push_back(std::move(t));
      continue;
    }
    std::map<std::size_t, int> local;
    for (auto k : ante.tokens) {
      local[k] = static_cast<int>(out.tokens.size());
      Token t = prev.tokens[k];
      t.index = out.tokens.size();
      out.tokens.push_back(std::move(t));
    }
    map_index[i] = local[ante.head];
    for (auto k : ante.tokens) {
      if (k == ante.head) continue;
      const auto* he = prev.head_edge(k);
      inner.push_back({local[ante.head], local[k], he ? he->label : "dep"});
    }
  }
  for (const auto& e : utt.edges) {
    DependencyEdge ne = e;
    ne.dependent = map_index[e.dependent];
    if (!e.is_root()) ne.governor = map_index[e.governor];
    out.edges.push_back(std::move(ne));
  }
  for (auto& e : inner) out.edges.push_back(std::move(e));
  std::sort(out.edges.begin(), out.edges.end(),
            [](const DependencyEdge& a, const DependencyEdge& b) { return a.dependent < b.dependent; });
  return out;
}

}  // namespace

std::vector<Utterance> resolve_pronouns(const std::vector<Utterance>& utterances) {
  std::vector<Utterance> out;
  out.reserve(utterances.size());
  for (std::size_t ui = 0; ui < utterances.size(); ++ui) {
    const auto& utt = utterances[ui];
    if (ui == 0) {
      out.push_back(utt);
      continue;
    }
    const auto ante = find_antecedent(out.back());
    std::vector<std::size_t> pronouns;
    if (ante) {
      for (const auto& t : utt.tokens) {
        const bool third_person = t.norm == "it" || t.norm == "they" || t.norm == "this" ||
                                  t.norm == "that";
        if (!third_person || (t.pos != "PRP" && t.pos != "DT")) continue;
        const auto* he = utt.head_edge(t.index);
        if (!he || !is_subject_or_object(he->label)) continue;
        const bool plural = t.norm == "they";
        if (plural != ante->plural) continue;
        pronouns.push_back(t.index);
      }
    }
    out.push_back(pronouns.empty() ? utt : substitute(utt, pronouns, out.back(), *ante));
  }
  return out;
}

int MergedGraph::find_edge(int gov, int dep, const std::string& label) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.gov == gov && e.dep == dep && e.label == label) return static_cast<int>(i);
  }
  return -1;
}

std::set<std::string> context_words(const Utterance& utt, std::size_t i, Side side,
                                    std::size_t window) {
  std::set<std::string> out;
  for (std::size_t d = 1; d <= window; ++d) {
    if (side == Side::kLeft) {
      if (i < d) break;
      out.insert(utt.tokens[i - d].norm);
    } else {
      if (i + d >= utt.tokens.size()) break;
      out.insert(utt.tokens[i + d].norm);
    }
  }
  return out;
}

std::size_t directed_context(const GraphNode& candidate, const std::vector<Utterance>& placed,
                             const std::set<std::string>& new_word_context, Side side,
                             std::size_t window) {
  std::set<std::string> cand;
  for (const auto& occ : candidate.occurrences) {
    if (occ.utterance >= placed.size()) continue;
    const auto words = context_words(placed[occ.utterance], occ.token, side, window);
    cand.insert(words.begin(), words.end());
  }
  std::size_t common = 0;
  for (const auto& w : new_word_context) common += cand.count(w);
  return common;
}

int resolve_ambiguity(const std::vector<int>& candidates, const std::vector<GraphNode>& nodes,
                      const std::vector<Utterance>& placed, const Utterance& utt,
                      std::size_t token) {
  const auto left = context_words(utt, token, Side::kLeft, kContextWindow);
  const auto right = context_words(utt, token, Side::kRight, kContextWindow);
  int best = -1;
  std::size_t best_score = 0;
  bool tie = false;
  for (int c : candidates) {
    const std::size_t score =
        directed_context(nodes[c], placed, left, Side::kLeft, kContextWindow) +
        directed_context(nodes[c], placed, right, Side::kRight, kContextWindow);
    if (score > best_score) {
      best = c;
      best_score = score;
      tie = false;
    } else if (score == best_score && score > 0) {
      tie = true;
    }
  }
  return tie ? -1 : best;
}

namespace {

class GraphBuilder {
 public:
  GraphBuilder() {
    g_.nodes.push_back({0, "<start>", "START", "<start>", {}, NodeKind::kStart});
    g_.nodes.push_back({1, "<end>", "END", "<end>", {}, NodeKind::kEnd});
    g_.start_id = 0;
    g_.end_id = 1;
  }

  void add(const Utterance& utt) {
    const std::size_t ui = g_.utterances.size();
    if (utt.tokens.empty()) {
      throw ValidationError("utterance '" + utt.id + "' has no tokens left to fuse");
    }
    std::vector<int> mapping(utt.tokens.size(), -1);
    for (const auto& t : utt.tokens) {
      int node = -1;
      if (is_mergeable(t)) {
        std::vector<int> candidates;
        auto it = by_key_.find({t.norm, t.pos});
        if (it != by_key_.end()) {
          for (int c : it->second) {
            const auto& occ = g_.nodes[c].occurrences;
            const bool same_utterance = std::any_of(
                occ.begin(), occ.end(), [&](const Occurrence& o) { return o.utterance == ui; });
            if (!same_utterance) candidates.push_back(c);
          }
        }
        if (candidates.size() == 1) {
          node = candidates.front();
        } else if (candidates.size() > 1) {
          node = resolve_ambiguity(candidates, g_.nodes, g_.utterances, utt, t.index);
        }
      }
      if (node < 0) {
        node = static_cast<int>(g_.nodes.size());
        g_.nodes.push_back({node, t.norm, t.pos, t.surface, {}, NodeKind::kWord});
        by_key_[{t.norm, t.pos}].push_back(node);
      }
      g_.nodes[node].occurrences.push_back({ui, t.index});
      mapping[t.index] = node;
    }

    const std::size_t support = ui + 1;
    for (const auto& e : utt.edges) {
      if (e.is_root()) {
        add_edge(g_.start_id, mapping[e.dependent], "root", support);
      } else {
        add_edge(mapping[e.governor], mapping[e.dependent], e.label, support);
      }
    }
    add_edge(mapping.back(), g_.end_id, "end", support);
    g_.utterances.push_back(utt);
    g_.token_node.push_back(std::move(mapping));
  }

  MergedGraph finish() {
    g_.n_utterances = g_.utterances.size();
    return std::move(g_);
  }

 private:
  void add_edge(int gov, int dep, const std::string& label, std::size_t support) {
    auto key = std::make_tuple(gov, dep, label);
    auto it = edge_index_.find(key);
    if (it == edge_index_.end()) {
      edge_index_[key] = g_.edges.size();
      g_.edges.push_back({gov, dep, label, {support}});
      return;
    }
    auto& s = g_.edges[it->second].support;
    if (s.back() != support) s.push_back(support);
  }

  MergedGraph g_;
  std::map<std::pair<std::string, std::string>, std::vector<int>> by_key_;
  std::map<std::tuple<int, int, std::string>, std::size_t> edge_index_;
};

}  // namespace

MergedGraph merge_utterances(const std::vector<Utterance>& utterances) {
  if (utterances.empty()) throw ValidationError("cannot merge an empty utterance list");
  GraphBuilder builder;
  for (const auto& u : utterances) builder.add(u);
  return builder.finish();
}

std::string graph_to_json(const MergedGraph& g) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json occ = json::array();
    for (const auto& o : n.occurrences) occ.push_back({o.utterance, o.token});
    nodes.push_back({{"id", n.id}, {"word", n.norm}, {"pos", n.pos}, {"occurrences", occ}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"gov", e.gov}, {"dep", e.dep}, {"label", e.label}, {"support", e.support}});
  }
  json doc{{"start", g.start_id}, {"end", g.end_id}, {"n_utterances", g.n_utterances},
           {"nodes", nodes}, {"edges", edges}};
  return doc.dump(1) + "\n";
}

std::string graph_to_dot(const MergedGraph& g) {
  std::ostringstream out;
  out << "digraph merged {\n";
  for (const auto& n : g.nodes) {
    out << "  n" << n.id << " [label=\"" << n.norm << '/' << n.pos << "\"];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.gov << " -> n" << e.dep << " [label=\"" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace meetsum
