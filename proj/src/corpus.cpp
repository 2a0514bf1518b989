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

#include "meetsum/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "meetsum/error.hpp"

namespace meetsum {

const Lexicon& Lexicon::standard() {
  static const Lexicon lexicon;
  return lexicon;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool is_stopword(std::string_view norm) {
  static const std::unordered_set<std::string_view> kStop{
      "be",   "is",   "are",  "was",  "were", "am",   "been", "being", "'s",
      "'re",  "'m",   "have", "has",  "had",  "do",   "does", "did",   "not",
      "n't",  "so",   "very", "just", "also", "then", "well", "there", "here",
      "now",  "too",  "get",  "got",  "go",   "going"};
  return kStop.count(norm) > 0;
}

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

bool is_content_pos(std::string_view pos) {
  return starts_with(pos, "NN") || starts_with(pos, "JJ") ||
         starts_with(pos, "VB") || starts_with(pos, "RB");
}

bool is_noun_pos(std::string_view pos) { return starts_with(pos, "NN"); }

bool is_proper_noun_pos(std::string_view pos) {
  return pos == "NNP" || pos == "NNPS";
}

bool is_verb_pos(std::string_view pos) { return starts_with(pos, "VB"); }

bool is_punctuation_pos(std::string_view pos) {
  static const std::unordered_set<std::string_view> kPunct{
      ".", ",", ":", "``", "''", "-LRB-", "-RRB-", "#", "$", "PUNCT"};
  return kPunct.count(pos) > 0;
}

Token make_token(std::size_t index, std::string surface, std::string pos,
                 const Lexicon& lexicon) {
  Token t;
  t.index = index;
  t.norm = to_lower(surface);
  t.surface = std::move(surface);
  t.pos = std::move(pos);
  t.is_content = is_content_pos(t.pos);
  t.is_filler = lexicon.is_filler(t.norm);
  return t;
}

const DependencyEdge* Utterance::head_edge(std::size_t i) const {
  for (const auto& e : edges) {
    if (e.dependent == static_cast<int>(i)) return &e;
  }
  return nullptr;
}

int Utterance::root_index() const {
  for (const auto& e : edges) {
    if (e.is_root()) return e.dependent;
  }
  return -1;
}

void validate_utterance(const Utterance& utt) {
  const int n = static_cast<int>(utt.tokens.size());
  const std::string where = "utterance '" + utt.id + "'";
  if (n == 0) throw ValidationError(where + ": no tokens");
  std::vector<int> heads(n, 0);
  for (const auto& e : utt.edges) {
    if (e.dependent < 0 || e.dependent >= n) {
      throw ValidationError(where + ": dependent index " +
                            std::to_string(e.dependent) + " out of range");
    }
    if (e.governor != kRootGovernor && (e.governor < 0 || e.governor >= n)) {
      throw ValidationError(where + ": governor index " +
                            std::to_string(e.governor) + " out of range");
    }
    if (e.governor == e.dependent) {
      throw ValidationError(where + ": self-loop on token " +
                            std::to_string(e.dependent));
    }
    ++heads[e.dependent];
  }
  for (int i = 0; i < n; ++i) {
    if (heads[i] != 1) {
      throw ValidationError(where + ": token " + std::to_string(i) + " has " +
                            std::to_string(heads[i]) + " heads");
    }
    if (utt.tokens[i].index != static_cast<std::size_t>(i)) {
      throw ValidationError(where + ": token indices not consecutive");
    }
  }
}

void validate_meeting(const Meeting& meeting) {
  if (meeting.utterances.empty()) {
    throw ValidationError("meeting '" + meeting.id + "' has no utterances");
  }
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < meeting.utterances.size(); ++i) {
    const auto& u = meeting.utterances[i];
    if (!ids.insert(u.id).second) {
      throw ValidationError("duplicate utterance id '" + u.id + "'");
    }
    if (u.position != i) {
      throw ValidationError("utterance '" + u.id + "' has position " +
                            std::to_string(u.position) + ", expected " +
                            std::to_string(i));
    }
    validate_utterance(u);
  }
}

bool is_partition(const std::vector<Segment>& segments, std::size_t n) {
  std::size_t expect = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (s.index != i || s.start != expect || s.end <= s.start) return false;
    expect = s.end;
  }
  return expect == n && !segments.empty();
}

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(to_lower(cur));
    cur.clear();
  };
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) || c == '\'' || c == '-' || uc >= 0x80) {
      cur.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace meetsum
