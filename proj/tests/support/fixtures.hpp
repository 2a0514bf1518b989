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

// Compact utterance notation for tests: "word/POS/head/label" per token,
// head 1-based and 0 for ROOT, the same as CoNLL-U.

#include <sstream>
#include <string>
#include <vector>

#include "meetsum/corpus.hpp"
#include "meetsum/relation_stats.hpp"
#include "meetsum/transcript_io.hpp"

namespace meetsum::fixture {

inline Utterance utt(const std::string& spec, std::size_t position = 0,
                     const std::string& speaker = "A") {
  Utterance u;
  u.id = "u" + std::to_string(position);
  u.speaker = speaker;
  u.position = position;
  std::istringstream in(spec);
  std::string item;
  while (in >> item) {
    const auto p3 = item.rfind('/');
    const auto p2 = item.rfind('/', p3 - 1);
    const auto p1 = item.rfind('/', p2 - 1);
    const std::size_t i = u.tokens.size();
    u.tokens.push_back(make_token(i, item.substr(0, p1), item.substr(p1 + 1, p2 - p1 - 1)));
    const int head = std::stoi(item.substr(p2 + 1, p3 - p2 - 1));
    u.edges.push_back({head - 1, static_cast<int>(i), item.substr(p3 + 1)});
  }
  return u;
}

inline Meeting meeting(const std::vector<std::string>& specs, const std::string& id = "m") {
  Meeting m;
  m.id = id;
  for (std::size_t i = 0; i < specs.size(); ++i) m.utterances.push_back(utt(specs[i], i));
  return m;
}

inline std::string data_path(const std::string& rel) {
  return std::string(MEETSUM_DATA_DIR) + "/" + rel;
}

inline Meeting kickoff() { return load_transcript(data_path("kickoff.json")); }

inline RelationStats background() {
  const std::vector<Meeting> docs{load_transcript(data_path("background/newswire_toy.conllu"))};
  return build_relation_stats(docs);
}

}  // namespace meetsum::fixture
