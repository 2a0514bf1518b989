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

#include "meetsum/cross_validation.hpp"

#include <algorithm>
#include <memory>
#include <random>

#include "meetsum/error.hpp"

namespace meetsum {

std::vector<std::size_t> stratified_folds(const std::vector<LabeledInstance>& data,
                                          std::size_t folds, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < data.size(); ++i) (data[i].label ? pos : neg).push_back(i);
  std::mt19937_64 rng(seed);
  std::shuffle(neg.begin(), neg.end(), rng);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::vector<std::size_t> fold(data.size());
  std::size_t next = 0;
  for (auto i : neg) fold[i] = next++ % folds;
  for (auto i : pos) fold[i] = next++ % folds;
  return fold;
}

PrfReport cross_validate(const std::vector<LabeledInstance>& data, std::size_t folds,
                         const Trainer& trainer, const SamplingStrategy& sampling,
                         std::uint64_t seed, Execution exec) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (data.size() < folds) {
    throw ValidationError("too few instances (" + std::to_string(data.size()) + ") for " +
                          std::to_string(folds) + " folds");
  }
  const auto fold = stratified_folds(data, folds, seed);
  std::vector<char> predicted(data.size(), 0);
  for_each_index(folds, exec, [&](std::size_t f) {
    std::vector<LabeledInstance> train;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold[i] != f) train.push_back(data[i]);
    }
    SamplingStrategy s = sampling;
    s.seed = sampling.seed + f;
    const Predictor predict = trainer(apply_sampling(train, s));
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold[i] == f) predicted[i] = predict(data[i].features) ? 1 : 0;
    }
  });
  std::vector<bool> pred(data.size()), gold(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    pred[i] = predicted[i] != 0;
    gold[i] = data[i].label;
  }
  return classifier_prf(pred, gold);
}

PrfReport cross_validate(const std::vector<LabeledInstance>& data, std::size_t folds,
                         const TrainerConfig& trainer, const SamplingStrategy& sampling,
                         Execution exec) {
  // Folds already run in parallel; each model trains serially.
  Trainer fn = [trainer](const std::vector<LabeledInstance>& train) -> Predictor {
    auto model = std::make_shared<ClassifierModel>(
        train_classifier(train, trainer, Execution::kSerial));
    return [model](const FeatureVector& fv) { return classify(*model, fv).label; };
  };
  return cross_validate(data, folds, fn, sampling, trainer.seed, exec);
}

}  // namespace meetsum
