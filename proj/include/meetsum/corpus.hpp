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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace meetsum {

// Disfluency markers that carry no content. Fillers are flagged at parse
// time and removed only when utterances are fused.
struct Lexicon {
  std::set<std::string> fillers{"um", "uh", "ah", "hmm", "mm-hmm", "uh-huh"};

  bool is_filler(std::string_view norm) const {
    return fillers.count(std::string(norm)) > 0;
  }
  static const Lexicon& standard();
};

std::string to_lower(std::string_view s);

// Penn tag classes.
bool is_content_pos(std::string_view pos);  // NN*, JJ*, VB*, RB*
bool is_noun_pos(std::string_view pos);
bool is_proper_noun_pos(std::string_view pos);
bool is_verb_pos(std::string_view pos);
bool is_punctuation_pos(std::string_view pos);

// Function words carrying a content tag (forms of be/have/do and a few
// discourse adverbs). They neither merge nor form lexical chains.
bool is_stopword(std::string_view norm);

struct Token {
  std::size_t index = 0;
  std::string surface;
  std::string norm;
  std::string pos;
  bool is_content = false;
  bool is_filler = false;

  bool operator==(const Token&) const = default;
};

Token make_token(std::size_t index, std::string surface, std::string pos,
                 const Lexicon& lexicon = Lexicon::standard());

inline constexpr int kRootGovernor = -1;

struct DependencyEdge {
  int governor = kRootGovernor;  // token index, or kRootGovernor
  int dependent = 0;
  std::string label;

  bool is_root() const { return governor == kRootGovernor; }
  bool operator==(const DependencyEdge&) const = default;
};

struct Utterance {
  std::string id;
  std::string speaker;
  std::size_t position = 0;
  std::vector<Token> tokens;
  std::vector<DependencyEdge> edges;
  std::optional<bool> gold_in_summary;

  // Edge whose dependent is token i, if any.
  const DependencyEdge* head_edge(std::size_t i) const;
  // Index of the token attached to ROOT, or -1.
  int root_index() const;

  bool operator==(const Utterance&) const = default;
};

struct Meeting {
  std::string id;
  std::vector<Utterance> utterances;
  std::optional<std::vector<std::string>> gold_abstract;

  bool operator==(const Meeting&) const = default;
};

// Half-open range [start, end) of utterance positions.
struct Segment {
  std::size_t index = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool contains(std::size_t position) const {
    return position >= start && position < end;
  }
  bool operator==(const Segment&) const = default;
};

// Checks token, edge, and position invariants. Throws ValidationError naming
// the offending utterance.
void validate_utterance(const Utterance& utt);
void validate_meeting(const Meeting& meeting);

// Checks that segments form an ordered contiguous cover of n utterances.
bool is_partition(const std::vector<Segment>& segments, std::size_t n);

// Lowercased surfaces of a whitespace-separated string.
std::vector<std::string> tokenize_words(std::string_view text);

}  // namespace meetsum
