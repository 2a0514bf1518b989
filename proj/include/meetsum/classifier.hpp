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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "meetsum/features.hpp"
#include "meetsum/parallel.hpp"

namespace meetsum {

struct LabeledInstance {
  FeatureVector features;
  bool label = false;
  double weight = 1.0;
};

enum class SamplingKind { kNone, kWeight, kResample, kSmote };

struct SamplingStrategy {
  SamplingKind kind = SamplingKind::kNone;
  std::size_t smote_k = 5;
  std::uint64_t seed = 1;
};

SamplingKind parse_sampling_kind(std::string_view name);
std::string to_string(SamplingKind kind);

// Rebalances training data. Throws ValidationError on single-class input for
// any strategy other than kNone.
std::vector<LabeledInstance> apply_sampling(const std::vector<LabeledInstance>& data,
                                            const SamplingStrategy& strategy);

// n_new synthetic points, each x + u * (nn - x) for a random x, one of its k
// nearest minority neighbours nn (Euclidean over numeric features), and
// u ~ U[0, 1]. Boolean features are copied from x.
std::vector<FeatureVector> smote_oversample(const std::vector<FeatureVector>& minority,
                                            std::size_t n_new, std::size_t k,
                                            std::uint64_t seed);

enum class ClassifierKind { kNaiveBayes, kRandomForest };

ClassifierKind parse_classifier_kind(std::string_view name);
std::string to_string(ClassifierKind kind);

struct NaiveBayesModel {
  std::array<double, 2> priors{};  // [negative, positive]
  std::array<std::array<double, FeatureVector::kSize>, 2> mean{};
  std::array<std::array<double, FeatureVector::kSize>, 2> variance{};
  // P(feature = 1 | class) for boolean features.
  std::array<std::array<double, FeatureVector::kSize>, 2> rate{};
  double variance_floor = 1e-9;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;
  int left = -1;   // value <= threshold
  int right = -1;  // value > threshold
  double positive_fraction = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double positive_fraction(const FeatureVector& fv) const;
};

struct RandomForestModel {
  std::vector<DecisionTree> trees;
  std::size_t features_per_split = 4;
};

struct TrainerConfig {
  ClassifierKind kind = ClassifierKind::kRandomForest;
  std::size_t n_trees = 100;
  std::uint64_t seed = 1;
  double variance_floor = 1e-9;
};

struct ClassifierModel {
  ClassifierKind kind = ClassifierKind::kNaiveBayes;
  NaiveBayesModel nb;
  RandomForestModel rf;
  TrainerConfig config;
  SamplingStrategy sampling;
};

NaiveBayesModel train_nb(const std::vector<LabeledInstance>& data,
                         double variance_floor = 1e-9);

// Each tree grows on a weighted bootstrap with ceil(sqrt(d)) candidate
// features per split. Trees are seeded individually, so the serial and
// parallel paths build identical forests.
RandomForestModel train_rf(const std::vector<LabeledInstance>& data, std::size_t n_trees,
                           std::uint64_t seed, Execution exec = Execution::kParallel);

ClassifierModel train_classifier(const std::vector<LabeledInstance>& data,
                                 const TrainerConfig& cfg,
                                 Execution exec = Execution::kParallel);

struct Prediction {
  bool label = false;
  double score = 0;
};

Prediction classify(const ClassifierModel& model, const FeatureVector& fv);

std::string write_model(const ClassifierModel& model);
ClassifierModel parse_model(std::string_view text);

}  // namespace meetsum
