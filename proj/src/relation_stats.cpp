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

#include "meetsum/relation_stats.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "meetsum/error.hpp"
#include "meetsum/transcript_io.hpp"

namespace meetsum {

using nlohmann::json;

std::string RelationStats::governor_key(std::string_view norm,
                                        std::string_view pos) {
  std::string key(norm);
  key.push_back('|');
  key.append(pos);
  return key;
}

double RelationStats::label_prob(std::string_view norm, std::string_view pos,
                                 std::string_view label) const {
  auto it = label_probs.find(governor_key(norm, pos));
  if (it == label_probs.end()) return floor_prob;
  auto jt = it->second.find(std::string(label));
  return jt == it->second.end() ? 0.0 : jt->second;
}

std::int64_t RelationStats::frequency(std::string_view norm) const {
  auto it = word_freq.find(std::string(norm));
  return it == word_freq.end() ? 0 : it->second;
}

RelationStats build_relation_stats(std::span<const Meeting> docs) {
  std::map<std::string, std::map<std::string, std::int64_t>> counts;
  RelationStats stats;
  std::size_t n_edges = 0;
  for (const auto& doc : docs) {
    for (const auto& u : doc.utterances) {
      for (const auto& t : u.tokens) {
        ++stats.word_freq[t.norm];
        ++stats.total_tokens;
      }
      for (const auto& e : u.edges) {
        ++n_edges;
        if (e.is_root()) continue;
        const auto& g = u.tokens.at(static_cast<std::size_t>(e.governor));
        ++counts[RelationStats::governor_key(g.norm, g.pos)][e.label];
      }
    }
  }
  if (n_edges == 0) throw ValidationError("no edges");
  for (const auto& [key, labels] : counts) {
    std::int64_t total = 0;
    for (const auto& [label, c] : labels) total += c;
    auto& row = stats.label_probs[key];
    for (const auto& [label, c] : labels) {
      row[label] = static_cast<double>(c) / static_cast<double>(total);
    }
  }
  return stats;
}

double informativeness(std::string_view dep_norm,
                       const std::map<std::string, int>& segment_tf,
                       const RelationStats& stats) {
  auto it = segment_tf.find(std::string(dep_norm));
  if (it == segment_tf.end() || it->second <= 0) return 0.0;
  const double fa = static_cast<double>(stats.total_tokens);
  const double fd =
      static_cast<double>(std::max<std::int64_t>(stats.frequency(dep_norm), 1));
  if (fa <= fd) return 0.0;
  return static_cast<double>(it->second) * std::log(fa / fd);
}

std::string write_relation_stats(const RelationStats& stats) {
  json doc;
  json govs = json::object();
  for (const auto& [key, row] : stats.label_probs) govs[key] = row;
  doc["governors"] = std::move(govs);
  doc["word_freq"] = stats.word_freq;
  doc["total_tokens"] = stats.total_tokens;
  doc["floor_prob"] = stats.floor_prob;
  return doc.dump(1) + "\n";
}

RelationStats parse_relation_stats(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed stats JSON: ") + e.what(), 1, e.byte);
  }
  RelationStats stats;
  try {
    for (const auto& [key, row] : doc.at("governors").items()) {
      stats.label_probs[key] = row.get<std::map<std::string, double>>();
    }
    stats.word_freq = doc.at("word_freq").get<std::map<std::string, std::int64_t>>();
    stats.total_tokens = doc.at("total_tokens").get<std::int64_t>();
    if (doc.contains("floor_prob")) stats.floor_prob = doc["floor_prob"].get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad stats file: ") + e.what());
  }
  std::int64_t sum = 0;
  for (const auto& [w, c] : stats.word_freq) {
    if (c < 0) throw ValidationError("negative word frequency for '" + w + "'");
    sum += c;
  }
  if (sum != stats.total_tokens) {
    throw ValidationError("total_tokens does not equal the sum of word_freq");
  }
  for (const auto& [key, row] : stats.label_probs) {
    double s = 0;
    for (const auto& [label, p] : row) {
      if (p < 0) throw ValidationError("negative probability under '" + key + "'");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-9) {
      throw ValidationError("label probabilities under '" + key + "' do not sum to 1");
    }
  }
  return stats;
}

RelationStats load_relation_stats(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("stats file not found: " + path.string());
  }
  return parse_relation_stats(read_file(path));
}

}  // namespace meetsum
