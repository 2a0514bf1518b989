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

#include "meetsum/features.hpp"

#include <cmath>
#include <set>

#include "meetsum/error.hpp"

namespace meetsum {

std::array<double, FeatureVector::kSize> FeatureVector::values() const {
  return {len_tokens,
          n_content,
          frac_content,
          n_new_nouns,
          cos_meeting,
          has_proper_noun ? 1.0 : 0.0,
          is_top_speaker_meeting ? 1.0 : 0.0,
          prev_content_words,
          is_top_speaker_segment ? 1.0 : 0.0,
          cos_segment};
}

FeatureVector FeatureVector::from_values(const std::array<double, kSize>& v) {
  FeatureVector f;
  f.len_tokens = v[0];
  f.n_content = v[1];
  f.frac_content = v[2];
  f.n_new_nouns = v[3];
  f.cos_meeting = v[4];
  f.has_proper_noun = v[5] >= 0.5;
  f.is_top_speaker_meeting = v[6] >= 0.5;
  f.prev_content_words = v[7];
  f.is_top_speaker_segment = v[8] >= 0.5;
  f.cos_segment = v[9];
  return f;
}

bool FeatureVector::is_boolean(std::size_t i) { return i == 5 || i == 6 || i == 8; }

const std::array<const char*, FeatureVector::kSize>& FeatureVector::names() {
  static const std::array<const char*, kSize> kNames{
      "len_tokens",         "n_content",          "frac_content",
      "n_new_nouns",        "cos_meeting",        "has_proper_noun",
      "is_top_speaker_meeting", "prev_content_words", "is_top_speaker_segment",
      "cos_segment"};
  return kNames;
}

TermVector content_tf(const Utterance& utt) {
  TermVector tf;
  for (const auto& t : utt.tokens) {
    if (t.is_content && !t.is_filler) ++tf[t.norm];
  }
  return tf;
}

double cosine(const TermVector& a, const TermVector& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [w, c] : a) {
    na += static_cast<double>(c) * c;
    auto it = b.find(w);
    if (it != b.end()) dot += static_cast<double>(c) * it->second;
  }
  for (const auto& [w, c] : b) nb += static_cast<double>(c) * c;
  if (na == 0 || nb == 0) return 0.0;
  return std::min(1.0, dot / (std::sqrt(na) * std::sqrt(nb)));
}

std::string top_speaker(const Meeting& meeting, std::size_t start, std::size_t end) {
  std::map<std::string, std::size_t> words;
  for (std::size_t p = start; p < end && p < meeting.utterances.size(); ++p) {
    const auto& u = meeting.utterances[p];
    words[u.speaker] += u.tokens.size();
  }
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [speaker, count] : words) {
    if (best.empty() || count > best_count) {
      best = speaker;
      best_count = count;
    }
  }
  return best;
}

namespace {

void add_into(TermVector& acc, const TermVector& tf) {
  for (const auto& [w, c] : tf) acc[w] += c;
}

double count_content(const Utterance& u) {
  double n = 0;
  for (const auto& t : u.tokens) n += (t.is_content && !t.is_filler) ? 1 : 0;
  return n;
}

FeatureVector compute(const Utterance& utt, const Meeting& meeting,
                      const std::set<std::string>& seen_before, const TermVector& utt_tf,
                      const TermVector& meeting_tf, const TermVector& segment_tf,
                      const std::string& meeting_top, const std::string& segment_top) {
  FeatureVector f;
  f.len_tokens = static_cast<double>(utt.tokens.size());
  f.n_content = count_content(utt);
  f.frac_content = f.len_tokens > 0 ? f.n_content / f.len_tokens : 0.0;
  std::set<std::string> new_nouns;
  for (const auto& t : utt.tokens) {
    if (is_noun_pos(t.pos) && !t.is_filler && !seen_before.count(t.norm)) {
      new_nouns.insert(t.norm);
    }
    if (is_proper_noun_pos(t.pos)) f.has_proper_noun = true;
  }
  f.n_new_nouns = static_cast<double>(new_nouns.size());
  f.cos_meeting = cosine(utt_tf, meeting_tf);
  f.is_top_speaker_meeting = utt.speaker == meeting_top;
  f.prev_content_words =
      utt.position == 0 ? 0.0 : count_content(meeting.utterances[utt.position - 1]);
  f.is_top_speaker_segment = utt.speaker == segment_top;
  f.cos_segment = cosine(utt_tf, segment_tf);
  return f;
}

}  // namespace

FeatureVector extract_features(const Utterance& utt, const Meeting& meeting,
                               const Segment& segment) {
  if (!segment.contains(utt.position) || segment.end > meeting.utterances.size()) {
    throw ValidationError("utterance '" + utt.id + "' is not inside segment " +
                          std::to_string(segment.index));
  }
  std::set<std::string> seen;
  TermVector meeting_tf, segment_tf;
  for (const auto& u : meeting.utterances) {
    if (u.position < utt.position) {
      for (const auto& t : u.tokens) seen.insert(t.norm);
    }
    const auto tf = content_tf(u);
    add_into(meeting_tf, tf);
    if (segment.contains(u.position)) add_into(segment_tf, tf);
  }
  return compute(utt, meeting, seen, content_tf(utt), meeting_tf, segment_tf,
                 top_speaker(meeting, 0, meeting.utterances.size()),
                 top_speaker(meeting, segment.start, segment.end));
}

std::vector<FeatureVector> extract_meeting_features(const Meeting& meeting,
                                                    const std::vector<Segment>& segments) {
  if (!is_partition(segments, meeting.utterances.size())) {
    throw ValidationError("segments do not partition meeting '" + meeting.id + "'");
  }
  const std::size_t n = meeting.utterances.size();
  std::vector<TermVector> tfs(n);
  TermVector meeting_tf;
  for (std::size_t i = 0; i < n; ++i) {
    tfs[i] = content_tf(meeting.utterances[i]);
    add_into(meeting_tf, tfs[i]);
  }
  const std::string meeting_top = top_speaker(meeting, 0, n);
  std::vector<FeatureVector> out(n);
  std::set<std::string> seen;
  for (const auto& seg : segments) {
    TermVector segment_tf;
    for (std::size_t p = seg.start; p < seg.end; ++p) add_into(segment_tf, tfs[p]);
    const std::string segment_top = top_speaker(meeting, seg.start, seg.end);
    for (std::size_t p = seg.start; p < seg.end; ++p) {
      const auto& u = meeting.utterances[p];
      out[p] = compute(u, meeting, seen, tfs[p], meeting_tf, segment_tf, meeting_top,
                       segment_top);
      for (const auto& t : u.tokens) seen.insert(t.norm);
    }
  }
  return out;
}

}  // namespace meetsum
