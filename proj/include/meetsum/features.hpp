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

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "meetsum/corpus.hpp"

namespace meetsum {

// Per-utterance features: basic, content, and segment-based.
// Count fields are stored as doubles so that SMOTE can interpolate them.
struct FeatureVector {
  double len_tokens = 0;
  double n_content = 0;
  double frac_content = 0;
  double n_new_nouns = 0;
  double cos_meeting = 0;
  bool has_proper_noun = false;
  bool is_top_speaker_meeting = false;
  double prev_content_words = 0;
  bool is_top_speaker_segment = false;
  double cos_segment = 0;

  static constexpr std::size_t kSize = 10;
  // Booleans map to 0/1.
  std::array<double, kSize> values() const;
  static FeatureVector from_values(const std::array<double, kSize>& v);
  static bool is_boolean(std::size_t i);
  static const std::array<const char*, kSize>& names();

  bool operator==(const FeatureVector&) const = default;
};

using TermVector = std::map<std::string, int>;

// Raw content-word term frequencies (fillers excluded).
TermVector content_tf(const Utterance& utt);
double cosine(const TermVector& a, const TermVector& b);

// Speaker with the most tokens over [start, end); ties go to the speaker name
// that sorts first.
std::string top_speaker(const Meeting& meeting, std::size_t start, std::size_t end);

FeatureVector extract_features(const Utterance& utt, const Meeting& meeting,
                               const Segment& segment);

// All utterances at once; entry i belongs to utterance position i.
std::vector<FeatureVector> extract_meeting_features(const Meeting& meeting,
                                                    const std::vector<Segment>& segments);

}  // namespace meetsum
