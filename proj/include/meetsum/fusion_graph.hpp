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
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "meetsum/corpus.hpp"

namespace meetsum {

// A token merges across utterances iff it is a content word and not a
// stopword.
bool is_mergeable(const Token& t);

// Drops fillers and punctuation and re-indexes the parse. Children of a
// dropped token are re-attached to its governor; if the root goes, its
// first surviving child becomes the root.
Utterance strip_for_fusion(const Utterance& utt, const Lexicon& lexicon = Lexicon::standard());

// Replaces a third-person pronoun (it/they/this/that tagged PRP or DT and
// attached as a subject or object) by the last noun phrase of the previous
// utterance when the two agree in number. The antecedent is the last noun
// head plus its det/amod/nn dependents.
std::vector<Utterance> resolve_pronouns(const std::vector<Utterance>& utterances);

enum class NodeKind { kWord, kStart, kEnd };

struct Occurrence {
  std::size_t utterance = 0;  // 0-based position in the fused set
  std::size_t token = 0;
  bool operator==(const Occurrence&) const = default;
  auto operator<=>(const Occurrence&) const = default;
};

struct GraphNode {
  int id = 0;
  std::string norm;
  std::string pos;
  std::string surface;  // surface form of the first occurrence
  std::vector<Occurrence> occurrences;
  NodeKind kind = NodeKind::kWord;
};

struct GraphEdge {
  int gov = 0;
  int dep = 0;
  std::string label;
  std::vector<std::size_t> support;  // 1-based utterance positions, ascending

  bool is_start() const { return label == "root"; }
  bool is_end() const { return label == "end"; }
};

struct MergedGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  int start_id = 0;
  int end_id = 1;
  std::size_t n_utterances = 0;
  // The fused utterances and, per token, the node it was mapped to.
  std::vector<Utterance> utterances;
  std::vector<std::vector<int>> token_node;

  bool is_dummy(int node) const { return node == start_id || node == end_id; }
  // Index into edges, or -1.
  int find_edge(int gov, int dep, const std::string& label) const;
};

enum class Side { kLeft, kRight };

// Distinct norms within `window` tokens on one side of token i.
std::set<std::string> context_words(const Utterance& utt, std::size_t i, Side side,
                                    std::size_t window);

// Number of norms shared between the candidate's neighbours (over all of its
// occurrences in `placed`) and the new word's neighbours on the same side.
std::size_t directed_context(const GraphNode& candidate, const std::vector<Utterance>& placed,
                             const std::set<std::string>& new_word_context, Side side,
                             std::size_t window);

inline constexpr std::size_t kContextWindow = 2;

// Picks the node a new word maps to among same-key candidates, or -1 when
// the summed left+right context has no strict positive maximum.
int resolve_ambiguity(const std::vector<int>& candidates, const std::vector<GraphNode>& nodes,
                      const std::vector<Utterance>& placed, const Utterance& utt,
                      std::size_t token);

// Fuses stripped, resolved utterances into one graph with start/end dummies.
MergedGraph merge_utterances(const std::vector<Utterance>& utterances);

std::string graph_to_json(const MergedGraph& g);
// Graphviz digraph; nodes labelled word/POS, edges labelled by relation.
std::string graph_to_dot(const MergedGraph& g);

}  // namespace meetsum
