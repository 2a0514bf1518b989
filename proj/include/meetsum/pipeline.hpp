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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meetsum/classifier.hpp"
#include "meetsum/evaluator.hpp"
#include "meetsum/ilp.hpp"
#include "meetsum/linearizer.hpp"
#include "meetsum/msc.hpp"
#include "meetsum/relation_stats.hpp"
#include "meetsum/segmenter.hpp"

namespace meetsum {

enum class FusionAlgo { kIlp, kMsc };

FusionAlgo parse_fusion_algo(std::string_view name);
std::string to_string(FusionAlgo algo);
SegmenterAlgo parse_segmenter_algo(std::string_view name);
std::string to_string(SegmenterAlgo algo);

// Which utterances the segment term frequency is counted over.
enum class TfScope { kExtracted, kSegment };
TfScope parse_tf_scope(std::string_view name);
std::string to_string(TfScope scope);

struct PipelineConfig {
  SegmenterAlgo segmenter_algo = SegmenterAlgo::kLcseg;
  SegmenterConfig segmenter;
  // Short meetings get fewer segments: K is capped at n / min_segment_len.
  std::size_t min_segment_len = 10;

  TrainerConfig trainer;
  SamplingStrategy sampling{SamplingKind::kResample, 5, 1};

  FusionAlgo fusion = FusionAlgo::kIlp;
  SolverConfig solver;
  TfScope tf_scope = TfScope::kExtracted;
  MscConfig msc;

  std::size_t rouge_limit = 0;
  std::uint64_t seed = 1;
  std::size_t jobs = 0;  // 0: OpenMP default

  std::string stats_path;
  std::string model_path;
};

// JSON config; unknown keys are rejected with ConfigError. Fields that are
// absent keep their defaults.
PipelineConfig parse_pipeline_config(std::string_view json_text);
std::string write_pipeline_config(const PipelineConfig& cfg);

// Spreads the seed over trainer and sampling.
void apply_seed(PipelineConfig& cfg, std::uint64_t seed);

std::size_t effective_segments(const PipelineConfig& cfg, std::size_t n_utterances);

std::vector<Segment> segment_for_summary(const Meeting& meeting, const PipelineConfig& cfg,
                                         Execution exec = Execution::kSerial);

// Features and gold labels of every utterance that carries one.
std::vector<LabeledInstance> training_instances(const std::vector<Meeting>& meetings,
                                                const PipelineConfig& cfg);

struct UtteranceScore {
  std::size_t position = 0;
  bool selected = false;
  double score = 0;
};

// Per segment, the utterances the classifier keeps. Without a model the gold
// labels decide, and without those every utterance is kept. A segment with
// no positive keeps its top-scoring utterance.
std::vector<std::vector<UtteranceScore>> select_utterances(const Meeting& meeting,
                                                           const std::vector<Segment>& segments,
                                                           const ClassifierModel* model);

struct RetainedEdge {
  std::string governor;
  std::string dependent;
  std::string label;
  double coefficient = 0;
};

struct SegmentSummary {
  Segment segment;
  std::vector<std::string> utterance_ids;  // fused utterances
  Sentence sentence;
  double objective = 0;
  bool optimal = true;
  bool below_min_length = false;  // msc only
  std::vector<RetainedEdge> retained;
};

// Strip, resolve pronouns, merge, solve and linearize one set of utterances.
// With TfScope::kSegment, term frequency comes from `segment` (every
// utterance of the segment) when given.
SegmentSummary fuse_utterances(const std::vector<Utterance>& utterances,
                               const RelationStats& stats, const PipelineConfig& cfg,
                               const std::vector<Utterance>* segment = nullptr);

struct MeetingSummary {
  std::string meeting_id;
  std::vector<Segment> segments;
  std::vector<SegmentSummary> sentences;
  std::string text;  // one sentence per line, segment order
  std::optional<RougeScores> rouge;
};

// Errors are rethrown with the same type, prefixed by meeting id and stage.
MeetingSummary summarize_meeting(const Meeting& meeting, const RelationStats& stats,
                                 const ClassifierModel* model, const PipelineConfig& cfg);

std::vector<MeetingSummary> run_pipeline(const std::vector<Meeting>& meetings,
                                         const RelationStats& stats,
                                         const ClassifierModel* model, const PipelineConfig& cfg,
                                         Execution exec = Execution::kParallel);

std::string summary_trace_json(const MeetingSummary& summary);
// Averages over meetings with a gold abstract; one CSV row per meeting.
std::string evaluation_report_json(const std::vector<MeetingSummary>& summaries);
std::string evaluation_report_csv(const std::vector<MeetingSummary>& summaries);

}  // namespace meetsum
