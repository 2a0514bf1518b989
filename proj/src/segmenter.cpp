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

#include "meetsum/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "meetsum/error.hpp"

namespace meetsum {

void validate_config(const SegmenterConfig& cfg, std::size_t n, bool allow_auto_k) {
  if (n == 0) throw ConfigError("cannot segment an empty meeting");
  if (cfg.num_segments == 0 && !allow_auto_k) {
    throw ConfigError("number of segments must be at least 1");
  }
  if (cfg.num_segments > n) {
    throw ConfigError("requested " + std::to_string(cfg.num_segments) +
                      " segments but the meeting has only " + std::to_string(n) +
                      " utterances");
  }
  if (cfg.window < 1) throw ConfigError("window must be at least 1");
  if (!(cfg.alpha > 0)) throw ConfigError("alpha must be positive");
}

double chain_weight(std::size_t freq, std::size_t span, std::size_t n_utterances) {
  return static_cast<double>(freq) *
         std::log(static_cast<double>(n_utterances) / static_cast<double>(span));
}

std::vector<Chain> lexical_chains(const Meeting& meeting, const SegmenterConfig& cfg) {
  const std::size_t n = meeting.utterances.size();
  std::map<std::string, std::vector<std::size_t>> occurrences;
  for (const auto& u : meeting.utterances) {
    for (const auto& t : u.tokens) {
      if (t.is_content && !t.is_filler && !is_stopword(t.norm)) occurrences[t.norm].push_back(u.position);
    }
  }
  std::vector<Chain> chains;
  for (const auto& [term, positions] : occurrences) {
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= positions.size(); ++i) {
      const bool split =
          i == positions.size() || positions[i] - positions[i - 1] > cfg.hiatus;
      if (!split) continue;
      const std::size_t freq = i - run_start;
      if (freq >= 2) {
        Chain c;
        c.term = term;
        c.first = positions[run_start];
        c.last = positions[i - 1];
        c.freq = freq;
        c.weight = chain_weight(freq, c.last - c.first + 1, n);
        chains.push_back(std::move(c));
      }
      run_start = i;
    }
  }
  std::sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) {
    return std::tie(a.first, a.term) < std::tie(b.first, b.term);
  });
  return chains;
}

std::vector<double> gap_similarities(const Meeting& meeting,
                                     const std::vector<Chain>& chains,
                                     std::size_t window, Execution exec) {
  const std::size_t n = meeting.utterances.size();
  if (n < 2) return {};
  std::vector<double> sims(n - 1, 0.0);
  for_each_index(n - 1, exec, [&](std::size_t gap) {
    const std::size_t split = gap + 1;
    const std::size_t left_lo = split > window ? split - window : 0;
    const std::size_t right_hi = std::min(n, split + window);
    double dot = 0, left_norm = 0, right_norm = 0;
    for (const auto& c : chains) {
      const bool in_left = c.first < split && c.last >= left_lo;
      const bool in_right = c.first < right_hi && c.last >= split;
      const double w2 = c.weight * c.weight;
      if (in_left) left_norm += w2;
      if (in_right) right_norm += w2;
      if (in_left && in_right) dot += w2;
    }
    if (left_norm > 0 && right_norm > 0) {
      sims[gap] = dot / (std::sqrt(left_norm) * std::sqrt(right_norm));
    }
  });
  return sims;
}

std::vector<double> depth_scores(const std::vector<double>& sims) {
  const std::size_t m = sims.size();
  std::vector<double> depth(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t l = i;
    while (l > 0 && sims[l - 1] >= sims[l]) --l;
    std::size_t r = i;
    while (r + 1 < m && sims[r + 1] >= sims[r]) ++r;
    depth[i] = (sims[l] + sims[r] - 2.0 * sims[i]) / 2.0;
  }
  return depth;
}

std::vector<Segment> segments_from_boundaries(std::vector<std::size_t> boundaries,
                                              std::size_t n) {
  std::sort(boundaries.begin(), boundaries.end());
  std::vector<Segment> segs;
  std::size_t start = 0;
  for (std::size_t b : boundaries) {
    segs.push_back({segs.size(), start, b});
    start = b;
  }
  segs.push_back({segs.size(), start, n});
  return segs;
}

namespace {

// Gaps this close to a deeper minimum belong to its valley.
constexpr std::size_t kValleyRadius = 3;

bool is_local_min(const std::vector<double>& s, std::size_t i) {
  return (i == 0 || s[i] <= s[i - 1]) && (i + 1 == s.size() || s[i] <= s[i + 1]);
}

// Plain term-count cosine across a gap. Only consulted to order minima of
// equal chain similarity, e.g. when an utterance with no chained word sits
// between two topics.
double term_cosine(const Meeting& meeting, std::size_t gap, std::size_t window) {
  const std::size_t n = meeting.utterances.size();
  const std::size_t split = gap + 1;
  const std::size_t lo = split > window ? split - window : 0;
  const std::size_t hi = std::min(n, split + window);
  std::map<std::string, double> left, right;
  for (std::size_t p = lo; p < hi; ++p) {
    auto& side = p < split ? left : right;
    for (const auto& t : meeting.utterances[p].tokens) {
      if (t.is_content && !t.is_filler && !is_stopword(t.norm)) side[t.norm] += 1;
    }
  }
  double dot = 0, l2 = 0, r2 = 0;
  for (const auto& [w, c] : left) {
    l2 += c * c;
    const auto it = right.find(w);
    if (it != right.end()) dot += c * it->second;
  }
  for (const auto& [w, c] : right) r2 += c * c;
  return l2 > 0 && r2 > 0 ? dot / std::sqrt(l2 * r2) : 0.0;
}

}  // namespace

std::vector<Segment> segment_lcseg(const Meeting& meeting, const SegmenterConfig& cfg,
                                   Execution exec) {
  const std::size_t n = meeting.utterances.size();
  validate_config(cfg, n, /*allow_auto_k=*/true);
  if (n == 1 || cfg.num_segments == 1) return {{0, 0, n}};

  const auto chains = lexical_chains(meeting, cfg);
  const auto sims = gap_similarities(meeting, chains, cfg.window, exec);
  const auto depth = depth_scores(sims);

  std::vector<std::size_t> gaps;
  if (cfg.num_segments == 0) {
    std::vector<std::size_t> minima;
    for (std::size_t i = 0; i < sims.size(); ++i) {
      if (is_local_min(sims, i)) minima.push_back(i);
    }
    if (minima.empty()) return {{0, 0, n}};
    double mean = 0;
    for (auto i : minima) mean += depth[i];
    mean /= static_cast<double>(minima.size());
    double var = 0;
    for (auto i : minima) var += (depth[i] - mean) * (depth[i] - mean);
    const double sd = std::sqrt(var / static_cast<double>(minima.size()));
    for (auto i : minima) {
      if (depth[i] > mean - sd) gaps.push_back(i);
    }
  } else {
    // A minimum with a lower (or equal, earlier) one close by is the
    // shoulder of the same valley; it only competes with non-minima.
    std::vector<char> primary(sims.size(), 0);
    for (std::size_t i = 0; i < sims.size(); ++i) {
      if (!is_local_min(sims, i)) continue;
      bool dominated = false;
      const std::size_t lo = i > kValleyRadius ? i - kValleyRadius : 0;
      const std::size_t hi = std::min(sims.size(), i + kValleyRadius + 1);
      for (std::size_t j = lo; j < hi && !dominated; ++j) {
        if (j == i || !is_local_min(sims, j)) continue;
        if (sims[j] != sims[i]) {
          dominated = sims[j] < sims[i];
        } else {
          const double tj = term_cosine(meeting, j, cfg.window);
          const double ti = term_cosine(meeting, i, cfg.window);
          dominated = tj < ti || (tj == ti && j < i);
        }
      }
      primary[i] = dominated ? 0 : 1;
    }
    std::vector<std::size_t> order(sims.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (primary[a] != primary[b]) return primary[a] > primary[b];
      return depth[a] > depth[b];
    });
    gaps.assign(order.begin(), order.begin() + (cfg.num_segments - 1));
  }
  std::vector<std::size_t> boundaries;
  for (auto g : gaps) boundaries.push_back(g + 1);
  return segments_from_boundaries(std::move(boundaries), n);
}

double dcm_log_marginal(const std::map<std::string, int>& counts,
                        std::size_t vocab_size, double alpha) {
  const double va = static_cast<double>(vocab_size) * alpha;
  double total = 0;
  double result = 0;
  for (const auto& [w, c] : counts) {
    if (c <= 0) continue;
    total += c;
    result += std::lgamma(alpha + c) - std::lgamma(alpha);
  }
  if (total == 0) return 0.0;
  return result + std::lgamma(va) - std::lgamma(va + total);
}

std::vector<std::map<std::string, int>> content_counts(const Meeting& meeting) {
  std::vector<std::map<std::string, int>> out(meeting.utterances.size());
  for (const auto& u : meeting.utterances) {
    for (const auto& t : u.tokens) {
      if (t.is_content && !t.is_filler && !is_stopword(t.norm)) ++out[u.position][t.norm];
    }
  }
  return out;
}

namespace {

std::size_t vocabulary_size(const std::vector<std::map<std::string, int>>& counts) {
  std::map<std::string, int> vocab;
  for (const auto& c : counts) {
    for (const auto& [w, k] : c) vocab[w] += k;
  }
  return std::max<std::size_t>(vocab.size(), 1);
}

}  // namespace

std::vector<std::vector<double>> segment_score_table(
    const std::vector<std::map<std::string, int>>& counts, std::size_t vocab_size,
    double alpha, Execution exec) {
  const std::size_t n = counts.size();
  const double va = static_cast<double>(vocab_size) * alpha;
  std::vector<std::vector<double>> table(n, std::vector<double>(n + 1, 0.0));
  // Each token of word w adds ln(alpha + c_w) - ln(V alpha + n_seen).
  for_each_index(n, exec, [&](std::size_t i) {
    std::map<std::string, int> seen;
    int n_seen = 0;
    double score = 0;
    for (std::size_t j = i + 1; j <= n; ++j) {
      for (const auto& [w, c] : counts[j - 1]) {
        int& cw = seen[w];
        for (int t = 0; t < c; ++t) {
          score += std::log(alpha + cw) - std::log(va + n_seen);
          ++cw;
          ++n_seen;
        }
      }
      table[i][j] = score;
    }
  });
  return table;
}

std::vector<Segment> segment_bayes(const Meeting& meeting, const SegmenterConfig& cfg,
                                   Execution exec) {
  const std::size_t n = meeting.utterances.size();
  validate_config(cfg, n, /*allow_auto_k=*/false);
  const std::size_t k_max = cfg.num_segments;
  const auto counts = content_counts(meeting);
  const auto score = segment_score_table(counts, vocabulary_size(counts), cfg.alpha, exec);

  // best[k][i]: best split of [i, n) into k segments; next[k][i]: end of the
  // first segment. Scanning j upward with strict improvement keeps the
  // earliest boundary on ties, and the forward walk makes that lexicographic.
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(k_max + 1, std::vector<double>(n + 1, kNegInf));
  std::vector<std::vector<std::size_t>> next(k_max + 1, std::vector<std::size_t>(n + 1, n));
  for (std::size_t i = 0; i < n; ++i) best[1][i] = score[i][n];
  for (std::size_t k = 2; k <= k_max; ++k) {
    for (std::size_t i = 0; i + k <= n; ++i) {
      for (std::size_t j = i + 1; j + (k - 1) <= n; ++j) {
        const double v = score[i][j] + best[k - 1][j];
        if (v > best[k][i]) {
          best[k][i] = v;
          next[k][i] = j;
        }
      }
    }
  }
  std::vector<std::size_t> boundaries;
  std::size_t i = 0;
  for (std::size_t k = k_max; k >= 2; --k) {
    i = next[k][i];
    boundaries.push_back(i);
  }
  return segments_from_boundaries(std::move(boundaries), n);
}

double bayes_objective(const Meeting& meeting, const std::vector<Segment>& segments,
                       double alpha) {
  const auto counts = content_counts(meeting);
  const std::size_t v = vocabulary_size(counts);
  double total = 0;
  for (const auto& s : segments) {
    std::map<std::string, int> merged;
    for (std::size_t p = s.start; p < s.end; ++p) {
      for (const auto& [w, c] : counts[p]) merged[w] += c;
    }
    total += dcm_log_marginal(merged, v, alpha);
  }
  return total;
}

std::vector<Segment> segment_meeting(const Meeting& meeting, SegmenterAlgo algo,
                                     const SegmenterConfig& cfg, Execution exec) {
  return algo == SegmenterAlgo::kLcseg ? segment_lcseg(meeting, cfg, exec)
                                       : segment_bayes(meeting, cfg, exec);
}

}  // namespace meetsum
