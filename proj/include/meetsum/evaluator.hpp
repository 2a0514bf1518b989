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
#include <string>
#include <vector>

namespace meetsum {

// ROUGE recall. Matching is on lowercased exact tokens, without stemming or
// stopword removal. The candidate is cut to its first `limit` words; 0 means
// no limit.
double rouge_n(const std::vector<std::string>& candidate,
               const std::vector<std::string>& reference, std::size_t n,
               std::size_t limit = 0);

// Skip-bigrams with at most 4 intervening words, plus unigrams.
double rouge_su4(const std::vector<std::string>& candidate,
                 const std::vector<std::string>& reference, std::size_t limit = 0);

struct RougeScores {
  double r1 = 0;
  double r2 = 0;
  double rsu4 = 0;
};

RougeScores rouge_all(const std::vector<std::string>& candidate,
                      const std::vector<std::string>& reference, std::size_t limit);

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f = 0;
  std::size_t support = 0;
};

struct PrfReport {
  ClassMetrics positive;
  ClassMetrics negative;
  ClassMetrics weighted;  // averaged by class support
};

PrfReport classifier_prf(const std::vector<bool>& predictions, const std::vector<bool>& gold);

}  // namespace meetsum
