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

#include "meetsum/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "meetsum/error.hpp"
#include "meetsum/features.hpp"
#include "meetsum/fusion_graph.hpp"

namespace meetsum {

using nlohmann::json;

FusionAlgo parse_fusion_algo(std::string_view name) {
  if (name == "ilp") return FusionAlgo::kIlp;
  if (name == "msc") return FusionAlgo::kMsc;
  throw ConfigError("unknown fusion algorithm '" + std::string(name) + "'");
}

std::string to_string(FusionAlgo algo) { return algo == FusionAlgo::kIlp ? "ilp" : "msc"; }

TfScope parse_tf_scope(std::string_view name) {
  if (name == "extracted") return TfScope::kExtracted;
  if (name == "segment") return TfScope::kSegment;
  throw ConfigError("unknown tf scope '" + std::string(name) + "'");
}

std::string to_string(TfScope scope) {
  return scope == TfScope::kExtracted ? "extracted" : "segment";
}

SegmenterAlgo parse_segmenter_algo(std::string_view name) {
  if (name == "lcseg") return SegmenterAlgo::kLcseg;
  if (name == "bayes") return SegmenterAlgo::kBayes;
  throw ConfigError("unknown segmenter '" + std::string(name) + "'");
}

std::string to_string(SegmenterAlgo algo) {
  return algo == SegmenterAlgo::kLcseg ? "lcseg" : "bayes";
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown config key '" + where + it.key() + "'");
  }
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view json_text) {
  PipelineConfig cfg;
  try {
    const json doc = json::parse(json_text);
    reject_unknown(doc,
                   {"segmenter", "classifier", "solver", "fusion", "msc", "rouge_limit", "seed",
                    "jobs", "stats", "model"},
                   "");
    if (doc.contains("segmenter")) {
      const auto& s = doc["segmenter"];
      reject_unknown(s, {"algo", "num_segments", "hiatus", "window", "alpha", "min_segment_len"},
                     "segmenter.");
      if (s.contains("algo")) cfg.segmenter_algo = parse_segmenter_algo(s["algo"].get<std::string>());
      read_if(s, "num_segments", cfg.segmenter.num_segments);
      read_if(s, "hiatus", cfg.segmenter.hiatus);
      read_if(s, "window", cfg.segmenter.window);
      read_if(s, "alpha", cfg.segmenter.alpha);
      read_if(s, "min_segment_len", cfg.min_segment_len);
    }
    if (doc.contains("classifier")) {
      const auto& c = doc["classifier"];
      reject_unknown(c, {"kind", "n_trees", "sampling", "smote_k"}, "classifier.");
      if (c.contains("kind")) cfg.trainer.kind = parse_classifier_kind(c["kind"].get<std::string>());
      read_if(c, "n_trees", cfg.trainer.n_trees);
      if (c.contains("sampling")) {
        cfg.sampling.kind = parse_sampling_kind(c["sampling"].get<std::string>());
      }
      read_if(c, "smote_k", cfg.sampling.smote_k);
    }
    if (doc.contains("solver")) {
      const auto& s = doc["solver"];
      reject_unknown(s, {"gamma_words", "time_limit", "floor_prob", "tf_scope"}, "solver.");
      if (s.contains("tf_scope")) cfg.tf_scope = parse_tf_scope(s["tf_scope"].get<std::string>());
      if (s.contains("gamma_words")) {
        cfg.solver.gamma = SolverConfig::gamma_for_words(s["gamma_words"].get<std::size_t>());
      }
      read_if(s, "time_limit", cfg.solver.time_limit);
      read_if(s, "floor_prob", cfg.solver.floor_prob);
    }
    if (doc.contains("fusion")) cfg.fusion = parse_fusion_algo(doc["fusion"].get<std::string>());
    if (doc.contains("msc")) {
      const auto& m = doc["msc"];
      reject_unknown(m, {"min_len", "k"}, "msc.");
      read_if(m, "min_len", cfg.msc.min_len);
      read_if(m, "k", cfg.msc.k);
    }
    read_if(doc, "rouge_limit", cfg.rouge_limit);
    read_if(doc, "jobs", cfg.jobs);
    read_if(doc, "stats", cfg.stats_path);
    read_if(doc, "model", cfg.model_path);
    std::uint64_t seed = cfg.seed;
    read_if(doc, "seed", seed);
    apply_seed(cfg, seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  if (cfg.solver.gamma < 3) throw ConfigError("gamma must be at least 3");
  if (cfg.solver.time_limit <= 0) throw ConfigError("time limit must be positive");
  return cfg;
}

std::string write_pipeline_config(const PipelineConfig& cfg) {
  json doc{
      {"segmenter",
       {{"algo", to_string(cfg.segmenter_algo)},
        {"num_segments", cfg.segmenter.num_segments},
        {"hiatus", cfg.segmenter.hiatus},
        {"window", cfg.segmenter.window},
        {"alpha", cfg.segmenter.alpha},
        {"min_segment_len", cfg.min_segment_len}}},
      {"classifier",
       {{"kind", to_string(cfg.trainer.kind)},
        {"n_trees", cfg.trainer.n_trees},
        {"sampling", to_string(cfg.sampling.kind)},
        {"smote_k", cfg.sampling.smote_k}}},
      {"solver",
       {{"gamma_words", cfg.solver.gamma - 2},
        {"time_limit", cfg.solver.time_limit},
        {"floor_prob", cfg.solver.floor_prob},
        {"tf_scope", to_string(cfg.tf_scope)}}},
      {"fusion", to_string(cfg.fusion)},
      {"msc", {{"min_len", cfg.msc.min_len}, {"k", cfg.msc.k}}},
      {"rouge_limit", cfg.rouge_limit},
      {"seed", cfg.seed},
      {"jobs", cfg.jobs},
      {"stats", cfg.stats_path},
      {"model", cfg.model_path}};
  return doc.dump(2) + "\n";
}

void apply_seed(PipelineConfig& cfg, std::uint64_t seed) {
  cfg.seed = seed;
  cfg.trainer.seed = seed;
  cfg.sampling.seed = seed;
}

namespace {

// Re-raises a stage failure with the same category and some context.
template <typename F>
auto staged(const std::string& meeting, const char* stage, F&& fn) -> decltype(fn()) {
  const std::string where = "meeting '" + meeting + "', stage " + stage + ": ";
  try {
    return fn();
  } catch (const SolverError& e) {
    throw SolverError(e.kind(), where + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  } catch (const ParseError& e) {
    throw ValidationError(where + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + e.what());
  } catch (const Error& e) {
    throw Error(where + e.what());
  }
}

std::size_t content_count(const Utterance& u) {
  return static_cast<std::size_t>(
      std::count_if(u.tokens.begin(), u.tokens.end(),
                     [](const Token& t) { return t.is_content && !t.is_filler; }));
}

}  // namespace

std::size_t effective_segments(const PipelineConfig& cfg, std::size_t n_utterances) {
  const std::size_t k = cfg.segmenter.num_segments;
  if (k == 0) return 0;
  const std::size_t cap = std::max<std::size_t>(1, n_utterances / std::max<std::size_t>(cfg.min_segment_len, 1));
  return std::min(k, cap);
}

std::vector<Segment> segment_for_summary(const Meeting& meeting, const PipelineConfig& cfg,
                                         Execution exec) {
  SegmenterConfig sc = cfg.segmenter;
  sc.num_segments = effective_segments(cfg, meeting.utterances.size());
  if (sc.num_segments == 0 && cfg.segmenter_algo == SegmenterAlgo::kBayes) {
    throw ConfigError("the Bayesian segmenter needs a fixed number of segments");
  }
  return segment_meeting(meeting, cfg.segmenter_algo, sc, exec);
}

std::vector<LabeledInstance> training_instances(const std::vector<Meeting>& meetings,
                                                const PipelineConfig& cfg) {
  std::vector<LabeledInstance> data;
  for (const auto& m : meetings) {
    const auto segments = staged(m.id, "segment", [&] { return segment_for_summary(m, cfg); });
    const auto features = extract_meeting_features(m, segments);
    for (std::size_t i = 0; i < m.utterances.size(); ++i) {
      const auto& gold = m.utterances[i].gold_in_summary;
      if (gold) data.push_back({features[i], *gold, 1.0});
    }
  }
  return data;
}

std::vector<std::vector<UtteranceScore>> select_utterances(const Meeting& meeting,
                                                           const std::vector<Segment>& segments,
                                                           const ClassifierModel* model) {
  const bool any_gold = std::any_of(meeting.utterances.begin(), meeting.utterances.end(),
                                    [](const Utterance& u) { return u.gold_in_summary.has_value(); });
  std::vector<FeatureVector> features;
  if (model) features = extract_meeting_features(meeting, segments);

  std::vector<std::vector<UtteranceScore>> out;
  for (const auto& seg : segments) {
    std::vector<UtteranceScore> scores;
    for (std::size_t p = seg.start; p < seg.end; ++p) {
      UtteranceScore s{p, false, 0};
      if (model) {
        const auto pred = classify(*model, features[p]);
        s.selected = pred.label;
        s.score = pred.score;
      } else if (any_gold) {
        s.selected = meeting.utterances[p].gold_in_summary.value_or(false);
        s.score = s.selected ? 1 : 0;
      } else {
        s.selected = true;
        s.score = 1;
      }
      scores.push_back(s);
    }
    const bool none = std::none_of(scores.begin(), scores.end(),
                                   [](const UtteranceScore& s) { return s.selected; });
    if (none && !scores.empty()) {
      // Highest score; ties go to the utterance with more content words.
      auto best = scores.begin();
      for (auto it = scores.begin(); it != scores.end(); ++it) {
        const auto key = [&](const UtteranceScore& s) {
          return std::make_pair(s.score, content_count(meeting.utterances[s.position]));
        };
        if (key(*it) > key(*best)) best = it;
      }
      best->selected = true;
    }
    out.push_back(std::move(scores));
  }
  return out;
}

SegmentSummary fuse_utterances(const std::vector<Utterance>& utterances,
                               const RelationStats& stats, const PipelineConfig& cfg,
                               const std::vector<Utterance>* segment) {
  SegmentSummary out;
  std::vector<Utterance> stripped;
  for (const auto& u : utterances) {
    auto s = strip_for_fusion(u);
    if (s.tokens.empty()) continue;
    out.utterance_ids.push_back(u.id);
    stripped.push_back(std::move(s));
  }
  if (stripped.empty()) return out;

  if (cfg.fusion == FusionAlgo::kMsc) {
    const auto graph = build_word_graph(stripped);
    const auto r = best_path(graph, cfg.msc);
    out.sentence.nodes = r.nodes;
    out.sentence.words = r.words;
    out.sentence.text = r.text;
    out.objective = -r.cost;
    out.below_min_length = r.below_min_length;
    return out;
  }

  const auto graph = merge_utterances(resolve_pronouns(stripped));
  SegmentTf tf;
  if (cfg.tf_scope == TfScope::kSegment && segment != nullptr) {
    std::vector<Utterance> all;
    for (const auto& u : *segment) all.push_back(strip_for_fusion(u));
    tf = segment_term_frequency(all);
  } else {
    tf = segment_term_frequency(stripped);
  }
  const auto inst = build_instance(graph, stats, tf, cfg.solver);
  const auto sol = solve_exact(inst, cfg.solver);
  out.sentence = linearize(graph, sol.retained);
  out.objective = sol.objective;
  out.optimal = sol.optimal;
  for (int id : sol.retained) {
    const auto& e = graph.edges[id];
    out.retained.push_back({graph.nodes[e.gov].norm, graph.nodes[e.dep].norm, e.label,
                            inst.coeffs[id]});
  }
  return out;
}

MeetingSummary summarize_meeting(const Meeting& meeting, const RelationStats& stats,
                                 const ClassifierModel* model, const PipelineConfig& cfg) {
  MeetingSummary out;
  out.meeting_id = meeting.id;
  staged(meeting.id, "validate", [&] { validate_meeting(meeting); });
  out.segments = staged(meeting.id, "segment", [&] { return segment_for_summary(meeting, cfg); });
  const auto selection =
      staged(meeting.id, "extract", [&] { return select_utterances(meeting, out.segments, model); });

  for (std::size_t s = 0; s < out.segments.size(); ++s) {
    std::vector<Utterance> chosen, whole;
    for (const auto& us : selection[s]) {
      if (us.selected) chosen.push_back(meeting.utterances[us.position]);
      whole.push_back(meeting.utterances[us.position]);
    }
    auto summary =
        staged(meeting.id, "fuse", [&] { return fuse_utterances(chosen, stats, cfg, &whole); });
    summary.segment = out.segments[s];
    if (summary.sentence.words.empty()) continue;
    if (!out.text.empty()) out.text += "\n";
    out.text += summary.sentence.text;
    out.sentences.push_back(std::move(summary));
  }

  if (meeting.gold_abstract && !meeting.gold_abstract->empty()) {
    std::string joined;
    for (const auto& line : *meeting.gold_abstract) joined += line + " ";
    const auto reference = tokenize_words(joined);
    if (!reference.empty()) {
      out.rouge = rouge_all(tokenize_words(out.text), reference, cfg.rouge_limit);
    }
  }
  return out;
}

std::vector<MeetingSummary> run_pipeline(const std::vector<Meeting>& meetings,
                                         const RelationStats& stats,
                                         const ClassifierModel* model, const PipelineConfig& cfg,
                                         Execution exec) {
  std::vector<MeetingSummary> out(meetings.size());
  for_each_index(meetings.size(), exec, [&](std::size_t i) {
    out[i] = summarize_meeting(meetings[i], stats, model, cfg);
  });
  return out;
}

std::string summary_trace_json(const MeetingSummary& summary) {
  json segments = json::array();
  for (const auto& seg : summary.segments) {
    segments.push_back({{"index", seg.index}, {"start", seg.start}, {"end", seg.end}});
  }
  json sentences = json::array();
  for (const auto& s : summary.sentences) {
    json edges = json::array();
    for (const auto& e : s.retained) {
      edges.push_back({{"governor", e.governor},
                       {"dependent", e.dependent},
                       {"label", e.label},
                       {"coefficient", e.coefficient}});
    }
    json trace = json::array();
    for (const auto& step : s.sentence.trace) {
      trace.push_back({{"governor", step.governor}, {"block", step.order}});
    }
    sentences.push_back({{"segment", s.segment.index},
                         {"utterances", s.utterance_ids},
                         {"text", s.sentence.text},
                         {"objective", s.objective},
                         {"optimal", s.optimal},
                         {"below_min_length", s.below_min_length},
                         {"retained", edges},
                         {"merge_trace", trace}});
  }
  json doc{{"meeting", summary.meeting_id}, {"segments", segments}, {"sentences", sentences}};
  if (summary.rouge) {
    doc["rouge"] = {{"r1", summary.rouge->r1},
                    {"r2", summary.rouge->r2},
                    {"rsu4", summary.rouge->rsu4}};
  }
  return doc.dump(2) + "\n";
}

std::string evaluation_report_json(const std::vector<MeetingSummary>& summaries) {
  json meetings = json::object();
  RougeScores mean;
  std::size_t n = 0;
  for (const auto& s : summaries) {
    if (!s.rouge) continue;
    meetings[s.meeting_id] = {{"r1", s.rouge->r1}, {"r2", s.rouge->r2}, {"rsu4", s.rouge->rsu4}};
    mean.r1 += s.rouge->r1;
    mean.r2 += s.rouge->r2;
    mean.rsu4 += s.rouge->rsu4;
    ++n;
  }
  if (n > 0) {
    mean.r1 /= static_cast<double>(n);
    mean.r2 /= static_cast<double>(n);
    mean.rsu4 /= static_cast<double>(n);
  }
  json doc{{"meetings", meetings},
           {"evaluated", n},
           {"mean", {{"r1", mean.r1}, {"r2", mean.r2}, {"rsu4", mean.rsu4}}}};
  return doc.dump(2) + "\n";
}

std::string evaluation_report_csv(const std::vector<MeetingSummary>& summaries) {
  std::ostringstream out;
  out << "meeting,r1,r2,rsu4\n";
  char buf[128];
  for (const auto& s : summaries) {
    if (!s.rouge) continue;
    std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,%.6f\n", s.rouge->r1, s.rouge->r2, s.rouge->rsu4);
    out << s.meeting_id << buf;
  }
  return out.str();
}

}  // namespace meetsum
