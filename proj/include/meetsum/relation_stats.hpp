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

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "meetsum/corpus.hpp"

namespace meetsum {

// Background-corpus statistics: label distributions per governor and word
// frequencies used by the informativeness score.
struct RelationStats {
  // "norm|POS" -> label -> p(label | governor)
  std::map<std::string, std::map<std::string, double>> label_probs;
  std::map<std::string, std::int64_t> word_freq;
  std::int64_t total_tokens = 0;
  double floor_prob = 0.001;

  static std::string governor_key(std::string_view norm, std::string_view pos);

  // p(label | governor). Unseen governors get floor_prob; a seen governor
  // that never emitted the label gets 0.
  double label_prob(std::string_view norm, std::string_view pos,
                    std::string_view label) const;
  std::int64_t frequency(std::string_view norm) const;
  bool empty() const { return total_tokens == 0; }
};

// Counts governor labels over every non-ROOT edge and every token occurrence.
// Throws ValidationError("no edges") if the input has no dependency edges.
RelationStats build_relation_stats(std::span<const Meeting> docs);

// f_s * ln(F_A / max(F_d, 1)) with f_s = segment_tf[dep_norm].
double informativeness(std::string_view dep_norm,
                       const std::map<std::string, int>& segment_tf,
                       const RelationStats& stats);

std::string write_relation_stats(const RelationStats& stats);
RelationStats parse_relation_stats(std::string_view text);
// Throws ConfigError("stats file not found: ...") when missing.
RelationStats load_relation_stats(const std::filesystem::path& path);

}  // namespace meetsum
