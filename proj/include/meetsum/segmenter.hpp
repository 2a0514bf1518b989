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
#include <string>
#include <vector>

#include "meetsum/corpus.hpp"
#include "meetsum/parallel.hpp"

namespace meetsum {

struct SegmenterConfig {
  // Number of segments. 0 asks LCSeg to pick boundaries by depth threshold.
  std::size_t num_segments = 14;
  std::size_t hiatus = 11;
  std::size_t window = 15;
  double alpha = 0.2;
};

// Throws ConfigError if cfg is unusable for a meeting of n utterances.
void validate_config(const SegmenterConfig& cfg, std::size_t n, bool allow_auto_k);

// A run of repetitions of one content term.
struct Chain {
  std::string term;
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t freq = 0;
  double weight = 0.0;
};

// freq * ln(n_utterances / span), span = last - first + 1.
double chain_weight(std::size_t freq, std::size_t span, std::size_t n_utterances);

std::vector<Chain> lexical_chains(const Meeting& meeting, const SegmenterConfig& cfg);

// Cosine similarity of chain activity between the windows left and right of
// each gap. Entry i is the gap between utterances i and i + 1.
std::vector<double> gap_similarities(const Meeting& meeting,
                                     const std::vector<Chain>& chains,
                                     std::size_t window,
                                     Execution exec = Execution::kParallel);

// Depth score of every gap: (left peak + right peak - 2 * sim) / 2 with peaks
// found by hill climbing.
std::vector<double> depth_scores(const std::vector<double>& sims);

std::vector<Segment> segments_from_boundaries(std::vector<std::size_t> boundaries,
                                              std::size_t n);

std::vector<Segment> segment_lcseg(const Meeting& meeting, const SegmenterConfig& cfg,
                                   Execution exec = Execution::kParallel);

// ln[ G(V a)/G(V a + n) * prod_w G(a + c_w)/G(a) ].
double dcm_log_marginal(const std::map<std::string, int>& counts,
                        std::size_t vocab_size, double alpha);

// Content-word counts per utterance (fillers excluded), keyed by norm.
std::vector<std::map<std::string, int>> content_counts(const Meeting& meeting);

// score[i][j] = DCM log marginal of utterances [i, j), for j > i.
std::vector<std::vector<double>> segment_score_table(
    const std::vector<std::map<std::string, int>>& counts, std::size_t vocab_size,
    double alpha, Execution exec = Execution::kParallel);

std::vector<Segment> segment_bayes(const Meeting& meeting, const SegmenterConfig& cfg,
                                   Execution exec = Execution::kParallel);

// Sum of DCM scores of the partition (the quantity segment_bayes maximizes).
double bayes_objective(const Meeting& meeting, const std::vector<Segment>& segments,
                       double alpha);

enum class SegmenterAlgo { kLcseg, kBayes };

std::vector<Segment> segment_meeting(const Meeting& meeting, SegmenterAlgo algo,
                                     const SegmenterConfig& cfg,
                                     Execution exec = Execution::kParallel);

}  // namespace meetsum
