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
#include <cstdint>
#include <functional>
#include <vector>

#include "meetsum/classifier.hpp"
#include "meetsum/evaluator.hpp"
#include "meetsum/parallel.hpp"

namespace meetsum {

using Predictor = std::function<bool(const FeatureVector&)>;
using Trainer = std::function<Predictor(const std::vector<LabeledInstance>&)>;

// Stratified fold assignment: each class is shuffled under `seed` and dealt
// round-robin. Entry i is the fold of data[i].
std::vector<std::size_t> stratified_folds(const std::vector<LabeledInstance>& data,
                                          std::size_t folds, std::uint64_t seed);

// Sampling is applied to the training part of each fold only; held-out
// instances are scored untouched. Metrics are pooled over all folds.
PrfReport cross_validate(const std::vector<LabeledInstance>& data, std::size_t folds,
                         const Trainer& trainer, const SamplingStrategy& sampling,
                         std::uint64_t seed = 1, Execution exec = Execution::kParallel);

PrfReport cross_validate(const std::vector<LabeledInstance>& data, std::size_t folds,
                         const TrainerConfig& trainer, const SamplingStrategy& sampling,
                         Execution exec = Execution::kParallel);

}  // namespace meetsum
