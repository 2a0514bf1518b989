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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "meetsum/classifier.hpp"
#include "meetsum/error.hpp"

namespace meetsum {

SamplingKind parse_sampling_kind(std::string_view name) {
  if (name == "none") return SamplingKind::kNone;
  if (name == "weight") return SamplingKind::kWeight;
  if (name == "resample") return SamplingKind::kResample;
  if (name == "smote") return SamplingKind::kSmote;
  throw ConfigError("unknown sampling strategy '" + std::string(name) + "'");
}

std::string to_string(SamplingKind kind) {
  switch (kind) {
    case SamplingKind::kNone: return "none";
    case SamplingKind::kWeight: return "weight";
    case SamplingKind::kResample: return "resample";
    case SamplingKind::kSmote: return "smote";
  }
  return "none";
}

namespace {

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
  const auto va = a.values(), vb = b.values();
  double d = 0;
  for (std::size_t i = 0; i < FeatureVector::kSize; ++i) {
    if (FeatureVector::is_boolean(i)) continue;
    d += (va[i] - vb[i]) * (va[i] - vb[i]);
  }
  return d;
}

}  // namespace

std::vector<FeatureVector> smote_oversample(const std::vector<FeatureVector>& minority,
                                            std::size_t n_new, std::size_t k,
                                            std::uint64_t seed) {
  const std::size_t m = minority.size();
  if (m < 2) throw ValidationError("SMOTE needs at least 2 minority instances");
  if (k < 1) throw ConfigError("SMOTE neighbour count must be at least 1");
  const std::size_t kk = std::min(k, m - 1);

  std::vector<std::vector<std::size_t>> neighbours(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) idx.push_back(j);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return squared_distance(minority[i], minority[a]) <
             squared_distance(minority[i], minority[b]);
    });
    idx.resize(kk);
    neighbours[i] = std::move(idx);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_base(0, m - 1);
  std::uniform_int_distribution<std::size_t> pick_nn(0, kk - 1);
  std::uniform_real_distribution<double> gap(0.0, 1.0);

  std::vector<FeatureVector> out;
  out.reserve(n_new);
  for (std::size_t s = 0; s < n_new; ++s) {
    const std::size_t base = pick_base(rng);
    const std::size_t nn = neighbours[base][pick_nn(rng)];
    const double u = gap(rng);
    auto x = minority[base].values();
    const auto y = minority[nn].values();
    for (std::size_t i = 0; i < FeatureVector::kSize; ++i) {
      if (!FeatureVector::is_boolean(i)) x[i] += u * (y[i] - x[i]);
    }
    out.push_back(FeatureVector::from_values(x));
  }
  return out;
}

std::vector<LabeledInstance> apply_sampling(const std::vector<LabeledInstance>& data,
                                            const SamplingStrategy& strategy) {
  if (strategy.kind == SamplingKind::kNone) return data;

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < data.size(); ++i) (data[i].label ? pos : neg).push_back(i);
  if (pos.empty() || neg.empty()) {
    throw ValidationError("sampling strategy '" + to_string(strategy.kind) +
                          "' needs both classes in the training data");
  }

  switch (strategy.kind) {
    case SamplingKind::kWeight: {
      const double np_ratio =
          static_cast<double>(neg.size()) / static_cast<double>(pos.size());
      auto out = data;
      for (auto& inst : out) inst.weight = inst.label ? np_ratio : 1.0;
      return out;
    }
    case SamplingKind::kResample: {
      std::mt19937_64 rng(strategy.seed);
      const std::size_t n = data.size();
      const std::size_t n_pos = n / 2;
      const std::size_t n_neg = n - n_pos;
      std::vector<LabeledInstance> out;
      out.reserve(n);
      auto draw = [&](const std::vector<std::size_t>& from, std::size_t count) {
        std::uniform_int_distribution<std::size_t> pick(0, from.size() - 1);
        for (std::size_t i = 0; i < count; ++i) {
          auto inst = data[from[pick(rng)]];
          inst.weight = 1.0;
          out.push_back(inst);
        }
      };
      draw(neg, n_neg);
      draw(pos, n_pos);
      return out;
    }
    case SamplingKind::kSmote: {
      const bool minority_label = pos.size() <= neg.size();
      const auto& minority_idx = minority_label ? pos : neg;
      const std::size_t majority = std::max(pos.size(), neg.size());
      std::vector<FeatureVector> minority;
      for (auto i : minority_idx) minority.push_back(data[i].features);
      auto out = data;
      for (auto& fv : smote_oversample(minority, majority - minority.size(),
                                       strategy.smote_k, strategy.seed)) {
        out.push_back({fv, minority_label, 1.0});
      }
      return out;
    }
    case SamplingKind::kNone:
      break;
  }
  return data;
}

}  // namespace meetsum
