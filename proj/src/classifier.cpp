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

#include "meetsum/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <json.hpp>

#include "meetsum/error.hpp"

namespace meetsum {

using nlohmann::json;

ClassifierKind parse_classifier_kind(std::string_view name) {
  if (name == "nb") return ClassifierKind::kNaiveBayes;
  if (name == "rf") return ClassifierKind::kRandomForest;
  throw ConfigError("unknown classifier '" + std::string(name) + "'");
}

std::string to_string(ClassifierKind kind) {
  return kind == ClassifierKind::kNaiveBayes ? "nb" : "rf";
}

namespace {

void require_both_classes(const std::vector<LabeledInstance>& data) {
  bool pos = false, neg = false;
  for (const auto& d : data) (d.label ? pos : neg) = true;
  if (!pos || !neg) throw ValidationError("training data must contain both classes");
}

// splitmix64; derives independent per-tree seeds.
std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

NaiveBayesModel train_nb(const std::vector<LabeledInstance>& data, double variance_floor) {
  require_both_classes(data);
  constexpr std::size_t d = FeatureVector::kSize;
  NaiveBayesModel m;
  m.variance_floor = variance_floor;
  std::array<double, 2> w{};
  std::array<std::array<double, d>, 2> sum{}, sum_sq{};
  for (const auto& inst : data) {
    const int c = inst.label ? 1 : 0;
    const auto v = inst.features.values();
    w[c] += inst.weight;
    for (std::size_t i = 0; i < d; ++i) sum[c][i] += inst.weight * v[i];
  }
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < d; ++i) m.mean[c][i] = sum[c][i] / w[c];
  }
  for (const auto& inst : data) {
    const int c = inst.label ? 1 : 0;
    const auto v = inst.features.values();
    for (std::size_t i = 0; i < d; ++i) {
      const double diff = v[i] - m.mean[c][i];
      sum_sq[c][i] += inst.weight * diff * diff;
    }
  }
  for (int c = 0; c < 2; ++c) {
    m.priors[c] = w[c] / (w[0] + w[1]);
    for (std::size_t i = 0; i < d; ++i) {
      m.variance[c][i] = std::max(sum_sq[c][i] / w[c], variance_floor);
      // Laplace-smoothed Bernoulli rate.
      m.rate[c][i] = (sum[c][i] + 1.0) / (w[c] + 2.0);
    }
  }
  return m;
}

namespace {

double nb_score(const NaiveBayesModel& m, const FeatureVector& fv) {
  constexpr double kLog2Pi = 1.8378770664093453;
  const auto v = fv.values();
  std::array<double, 2> log_post{};
  for (int c = 0; c < 2; ++c) {
    double lp = std::log(m.priors[c]);
    for (std::size_t i = 0; i < FeatureVector::kSize; ++i) {
      if (FeatureVector::is_boolean(i)) {
        lp += std::log(v[i] >= 0.5 ? m.rate[c][i] : 1.0 - m.rate[c][i]);
      } else {
        const double var = m.variance[c][i];
        const double diff = v[i] - m.mean[c][i];
        lp += -0.5 * (kLog2Pi + std::log(var) + diff * diff / var);
      }
    }
    log_post[c] = lp;
  }
  return 1.0 / (1.0 + std::exp(log_post[0] - log_post[1]));
}

struct Sample {
  std::array<double, FeatureVector::kSize> x;
  bool label;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<Sample>& samples, std::size_t mtry, std::mt19937_64& rng)
      : samples_(samples), mtry_(mtry), rng_(rng) {}

  DecisionTree build(std::vector<std::size_t> idx) {
    tree_.nodes.clear();
    grow(std::move(idx));
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t> idx) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    std::size_t pos = 0;
    for (auto i : idx) pos += samples_[i].label ? 1 : 0;
    tree_.nodes[id].positive_fraction =
        static_cast<double>(pos) / static_cast<double>(idx.size());
    if (pos == 0 || pos == idx.size()) return id;

    std::array<std::size_t, FeatureVector::kSize> features;
    std::iota(features.begin(), features.end(), 0);
    std::shuffle(features.begin(), features.end(), rng_);

    int best_feature = -1;
    double best_threshold = 0, best_impurity = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < features.size(); ++k) {
      // Fall through to the remaining features only if the random subset
      // offered no usable split.
      if (k >= mtry_ && best_feature >= 0) break;
      evaluate(idx, features[k], pos, best_feature, best_threshold, best_impurity);
    }
    if (best_feature < 0) return id;  // all candidate features constant

    std::vector<std::size_t> left, right;
    for (auto i : idx) {
      (samples_[i].x[best_feature] <= best_threshold ? left : right).push_back(i);
    }
    tree_.nodes[id].feature = best_feature;
    tree_.nodes[id].threshold = best_threshold;
    const int l = grow(std::move(left));
    const int r = grow(std::move(right));
    tree_.nodes[id].left = l;
    tree_.nodes[id].right = r;
    return id;
  }

  void evaluate(const std::vector<std::size_t>& idx, std::size_t f, std::size_t total_pos,
                int& best_feature, double& best_threshold, double& best_impurity) {
    std::vector<std::size_t> order = idx;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return samples_[a].x[f] < samples_[b].x[f];
    });
    const double n = static_cast<double>(order.size());
    std::size_t left_pos = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      left_pos += samples_[order[i]].label ? 1 : 0;
      const double a = samples_[order[i]].x[f], b = samples_[order[i + 1]].x[f];
      if (!(a < b)) continue;
      const double nl = static_cast<double>(i + 1), nr = n - nl;
      const double pl = static_cast<double>(left_pos) / nl;
      const double pr = static_cast<double>(total_pos - left_pos) / nr;
      const double impurity =
          (nl * 2 * pl * (1 - pl) + nr * 2 * pr * (1 - pr)) / n;
      if (impurity < best_impurity) {
        best_impurity = impurity;
        best_feature = static_cast<int>(f);
        best_threshold = a + (b - a) / 2;
      }
    }
  }

  const std::vector<Sample>& samples_;
  std::size_t mtry_;
  std::mt19937_64& rng_;
  DecisionTree tree_;
};

}  // namespace

double DecisionTree::positive_fraction(const FeatureVector& fv) const {
  const auto x = fv.values();
  int id = 0;
  while (nodes[id].feature >= 0) {
    id = x[nodes[id].feature] <= nodes[id].threshold ? nodes[id].left : nodes[id].right;
  }
  return nodes[id].positive_fraction;
}

RandomForestModel train_rf(const std::vector<LabeledInstance>& data, std::size_t n_trees,
                           std::uint64_t seed, Execution exec) {
  require_both_classes(data);
  if (n_trees == 0) throw ConfigError("random forest needs at least one tree");
  std::vector<Sample> samples;
  std::vector<double> weights;
  samples.reserve(data.size());
  for (const auto& d : data) {
    samples.push_back({d.features.values(), d.label});
    weights.push_back(d.weight);
  }
  RandomForestModel model;
  model.features_per_split = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(FeatureVector::kSize))));
  model.trees.resize(n_trees);
  for_each_index(n_trees, exec, [&](std::size_t t) {
    std::mt19937_64 rng(mix_seed(seed ^ mix_seed(t)));
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    std::vector<std::size_t> bootstrap(samples.size());
    for (auto& i : bootstrap) i = draw(rng);
    TreeBuilder builder(samples, model.features_per_split, rng);
    model.trees[t] = builder.build(std::move(bootstrap));
  });
  return model;
}

ClassifierModel train_classifier(const std::vector<LabeledInstance>& data,
                                 const TrainerConfig& cfg, Execution exec) {
  ClassifierModel model;
  model.kind = cfg.kind;
  model.config = cfg;
  if (cfg.kind == ClassifierKind::kNaiveBayes) {
    model.nb = train_nb(data, cfg.variance_floor);
  } else {
    model.rf = train_rf(data, cfg.n_trees, cfg.seed, exec);
  }
  return model;
}

Prediction classify(const ClassifierModel& model, const FeatureVector& fv) {
  double score = 0;
  if (model.kind == ClassifierKind::kNaiveBayes) {
    score = nb_score(model.nb, fv);
  } else {
    std::size_t votes = 0;
    for (const auto& t : model.rf.trees) votes += t.positive_fraction(fv) >= 0.5 ? 1 : 0;
    score = model.rf.trees.empty()
                ? 0.0
                : static_cast<double>(votes) / static_cast<double>(model.rf.trees.size());
  }
  return {score >= 0.5, score};
}

std::string write_model(const ClassifierModel& model) {
  json doc;
  doc["kind"] = to_string(model.kind);
  doc["config"] = {{"n_trees", model.config.n_trees},
                   {"seed", model.config.seed},
                   {"variance_floor", model.config.variance_floor}};
  doc["sampling"] = {{"kind", to_string(model.sampling.kind)},
                     {"smote_k", model.sampling.smote_k},
                     {"seed", model.sampling.seed}};
  if (model.kind == ClassifierKind::kNaiveBayes) {
    const auto& nb = model.nb;
    doc["nb"] = {{"priors", nb.priors},
                 {"mean", nb.mean},
                 {"variance", nb.variance},
                 {"rate", nb.rate},
                 {"variance_floor", nb.variance_floor}};
  } else {
    json trees = json::array();
    for (const auto& t : model.rf.trees) {
      json nodes = json::array();
      for (const auto& n : t.nodes) {
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.positive_fraction});
      }
      trees.push_back(std::move(nodes));
    }
    doc["rf"] = {{"features_per_split", model.rf.features_per_split},
                 {"trees", std::move(trees)}};
  }
  return doc.dump() + "\n";
}

ClassifierModel parse_model(std::string_view text) {
  ClassifierModel model;
  try {
    const json doc = json::parse(text);
    model.kind = parse_classifier_kind(doc.at("kind").get<std::string>());
    model.config.kind = model.kind;
    model.config.n_trees = doc.at("config").at("n_trees").get<std::size_t>();
    model.config.seed = doc.at("config").at("seed").get<std::uint64_t>();
    model.config.variance_floor = doc.at("config").at("variance_floor").get<double>();
    model.sampling.kind = parse_sampling_kind(doc.at("sampling").at("kind").get<std::string>());
    model.sampling.smote_k = doc.at("sampling").at("smote_k").get<std::size_t>();
    model.sampling.seed = doc.at("sampling").at("seed").get<std::uint64_t>();
    if (model.kind == ClassifierKind::kNaiveBayes) {
      const auto& nb = doc.at("nb");
      nb.at("priors").get_to(model.nb.priors);
      nb.at("mean").get_to(model.nb.mean);
      nb.at("variance").get_to(model.nb.variance);
      nb.at("rate").get_to(model.nb.rate);
      model.nb.variance_floor = nb.at("variance_floor").get<double>();
    } else {
      const auto& rf = doc.at("rf");
      model.rf.features_per_split = rf.at("features_per_split").get<std::size_t>();
      for (const auto& jt : rf.at("trees")) {
        DecisionTree t;
        for (const auto& jn : jt) {
          t.nodes.push_back({jn.at(0).get<int>(), jn.at(1).get<double>(), jn.at(2).get<int>(),
                             jn.at(3).get<int>(), jn.at(4).get<double>()});
        }
        model.rf.trees.push_back(std::move(t));
      }
    }
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model JSON: ") + e.what(), 1, e.byte);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad model file: ") + e.what());
  }
  return model;
}

}  // namespace meetsum
