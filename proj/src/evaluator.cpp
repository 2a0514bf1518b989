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

#include "meetsum/evaluator.hpp"

#include <algorithm>
#include <map>

#include "meetsum/corpus.hpp"
#include "meetsum/error.hpp"

namespace meetsum {

namespace {

constexpr std::size_t kMaxSkip = 4;

std::vector<std::string> prepare(const std::vector<std::string>& words, std::size_t limit) {
  std::vector<std::string> out;
  const std::size_t n = limit == 0 ? words.size() : std::min(limit, words.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(to_lower(words[i]));
  return out;
}

using Units = std::map<std::string, std::size_t>;

Units ngrams(const std::vector<std::string>& w, std::size_t n) {
  Units u;
  if (w.size() < n) return u;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    std::string key = w[i];
    for (std::size_t j = 1; j < n; ++j) key += '\x1f' + w[i + j];
    ++u[key];
  }
  return u;
}

Units skip_units(const std::vector<std::string>& w) {
  Units u = ngrams(w, 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size() && j - i - 1 <= kMaxSkip; ++j) {
      ++u[w[i] + '\x1e' + w[j]];
    }
  }
  return u;
}

double clipped_recall(const Units& cand, const Units& ref) {
  std::size_t total = 0, hit = 0;
  for (const auto& [k, c] : ref) {
    total += c;
    auto it = cand.find(k);
    if (it != cand.end()) hit += std::min(c, it->second);
  }
  return total == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(total);
}

void require_reference(const std::vector<std::string>& reference) {
  if (reference.empty()) throw ValidationError("ROUGE reference is empty");
}

}  // namespace

double rouge_n(const std::vector<std::string>& candidate,
               const std::vector<std::string>& reference, std::size_t n, std::size_t limit) {
  require_reference(reference);
  if (n == 0) throw ConfigError("ROUGE-N needs n >= 1");
  return clipped_recall(ngrams(prepare(candidate, limit), n), ngrams(prepare(reference, 0), n));
}

double rouge_su4(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference, std::size_t limit) {
  require_reference(reference);
  return clipped_recall(skip_units(prepare(candidate, limit)),
                        skip_units(prepare(reference, 0)));
}

RougeScores rouge_all(const std::vector<std::string>& candidate,
                      const std::vector<std::string>& reference, std::size_t limit) {
  return {rouge_n(candidate, reference, 1, limit), rouge_n(candidate, reference, 2, limit),
          rouge_su4(candidate, reference, limit)};
}

namespace {

ClassMetrics metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.support = tp + fn;
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  m.f = m.precision + m.recall == 0
            ? 0.0
            : 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

}  // namespace

PrfReport classifier_prf(const std::vector<bool>& predictions, const std::vector<bool>& gold) {
  if (predictions.size() != gold.size()) {
    throw ValidationError("prediction and gold label counts differ");
  }
  if (gold.empty()) throw ValidationError("no predictions to score");
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predictions[i] && gold[i]) ++tp;
    else if (predictions[i] && !gold[i]) ++fp;
    else if (!predictions[i] && gold[i]) ++fn;
    else ++tn;
  }
  PrfReport r;
  r.positive = metrics(tp, fp, fn);
  r.negative = metrics(tn, fn, fp);
  const double n = static_cast<double>(gold.size());
  const double wp = static_cast<double>(r.positive.support) / n;
  const double wn = static_cast<double>(r.negative.support) / n;
  r.weighted.precision = wp * r.positive.precision + wn * r.negative.precision;
  r.weighted.recall = wp * r.positive.recall + wn * r.negative.recall;
  r.weighted.f = wp * r.positive.f + wn * r.negative.f;
  r.weighted.support = gold.size();
  return r;
}

}  // namespace meetsum
