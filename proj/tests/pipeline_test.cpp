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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "fixtures.hpp"
#include "meetsum/error.hpp"
#include "meetsum/pipeline.hpp"
#include "meetsum/transcript_io.hpp"
#include "synthetic.hpp"

namespace meetsum {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("meetsum_pipeline_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

Run cli(const std::string& args) {
  const auto out = scratch("stdout.txt"), err = scratch("stderr.txt");
  const std::string cmd = std::string(MEETSUM_CLI) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

std::string background_stats_file() {
  const auto path = scratch("bg_stats.json");
  write_file(path, write_relation_stats(fixture::background()));
  return path.string();
}

TEST(Config, DefaultsAndOverrides) {
  const auto cfg = parse_pipeline_config(R"({"segmenter": {"algo": "bayes", "num_segments": 5},
    "solver": {"gamma_words": 10, "tf_scope": "segment"}, "fusion": "msc", "seed": 9})");
  EXPECT_EQ(cfg.segmenter_algo, SegmenterAlgo::kBayes);
  EXPECT_EQ(cfg.segmenter.num_segments, 5u);
  EXPECT_EQ(cfg.solver.gamma, 12u);
  EXPECT_EQ(cfg.tf_scope, TfScope::kSegment);
  EXPECT_EQ(cfg.fusion, FusionAlgo::kMsc);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.trainer.seed, 9u);
  const auto def = parse_pipeline_config("{}");
  EXPECT_EQ(def.solver.gamma, 22u);
  EXPECT_EQ(def.segmenter.num_segments, 14u);
  EXPECT_EQ(def.tf_scope, TfScope::kExtracted);
}

TEST(Config, RoundTripAndRejections) {
  auto cfg = parse_pipeline_config(R"({"classifier": {"kind": "nb", "sampling": "smote"}, "rouge_limit": 300})");
  const auto back = parse_pipeline_config(write_pipeline_config(cfg));
  EXPECT_EQ(write_pipeline_config(back), write_pipeline_config(cfg));
  EXPECT_EQ(back.trainer.kind, ClassifierKind::kNaiveBayes);
  EXPECT_EQ(back.sampling.kind, SamplingKind::kSmote);
  EXPECT_EQ(back.rouge_limit, 300u);
  EXPECT_THROW(parse_pipeline_config(R"({"bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"solver": {"gama": 1}})"), ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"solver": {"gamma_words": 0}})"), ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"solver": {"time_limit": -1}})"), ConfigError);
  EXPECT_THROW(parse_pipeline_config(R"({"fusion": "magic"})"), ConfigError);
  EXPECT_THROW(parse_pipeline_config("{"), ConfigError);
}

TEST(Pipeline, EffectiveSegments) {
  PipelineConfig cfg;
  EXPECT_EQ(effective_segments(cfg, 3), 1u);
  EXPECT_EQ(effective_segments(cfg, 55), 5u);
  EXPECT_EQ(effective_segments(cfg, 200), 14u);
  cfg.segmenter.num_segments = 0;
  EXPECT_EQ(effective_segments(cfg, 200), 0u);
}

TEST(Pipeline, SelectionFallsBackToTopUtterance) {
  auto m = fixture::meeting({"ok/UH/0/root", "the/DT/3/det red/JJ/3/amod button/NN/0/root", "ok/UH/0/root"});
  for (auto& u : m.utterances) u.gold_in_summary = false;
  const auto sel = select_utterances(m, {{0, 0, 3}}, nullptr);
  ASSERT_EQ(sel.size(), 1u);
  int chosen = 0;
  for (const auto& s : sel[0]) chosen += s.selected;
  EXPECT_EQ(chosen, 1);
  EXPECT_TRUE(sel[0][1].selected);  // tie on score, most content words
  // Without gold labels every utterance is kept.
  for (auto& u : m.utterances) u.gold_in_summary.reset();
  const auto all = select_utterances(m, {{0, 0, 3}}, nullptr);
  for (const auto& s : all[0]) EXPECT_TRUE(s.selected);
}

TEST(Pipeline, KickoffSummary) {
  const auto summary =
      summarize_meeting(fixture::kickoff(), fixture::background(), nullptr, PipelineConfig{});
  ASSERT_EQ(summary.sentences.size(), 1u);
  EXPECT_EQ(summary.text,
            "We are designing a new remote control supposed to be original trendy and friendly.");
  EXPECT_TRUE(summary.sentences[0].optimal);
  ASSERT_TRUE(summary.rouge.has_value());
  EXPECT_GT(summary.rouge->r1, 0.3);
  const auto trace = nlohmann::json::parse(summary_trace_json(summary));
  EXPECT_EQ(trace["meeting"], "kickoff");
}

TEST(Pipeline, TfScopeSwitch) {
  const auto k = fixture::kickoff();
  PipelineConfig cfg;
  const std::vector<Utterance> two{k.utterances[1], k.utterances[2]};
  for (auto scope : {TfScope::kExtracted, TfScope::kSegment}) {
    cfg.tf_scope = scope;
    const auto s = fuse_utterances(two, fixture::background(), cfg, &k.utterances);
    EXPECT_FALSE(s.sentence.words.empty());
    EXPECT_LE(s.sentence.words.size() + 1, cfg.solver.gamma);
  }
  EXPECT_EQ(parse_tf_scope("segment"), TfScope::kSegment);
  EXPECT_EQ(to_string(TfScope::kExtracted), "extracted");
  EXPECT_THROW(parse_tf_scope("all"), ConfigError);
}

TEST(Pipeline, FourteenSegmentsOnLongMeeting) {
  synth::TopicMeetingSpec spec;
  spec.topics = 10;
  spec.per_topic = 20;
  const auto m = synth::topic_meeting(spec);
  ASSERT_EQ(m.utterances.size(), 200u);
  const auto stats = synth::synthetic_stats(1);
  PipelineConfig cfg;
  for (auto algo : {SegmenterAlgo::kLcseg, SegmenterAlgo::kBayes}) {
    cfg.segmenter_algo = algo;
    const auto s = summarize_meeting(m, stats, nullptr, cfg);
    EXPECT_EQ(s.segments.size(), 14u);
    EXPECT_LE(s.sentences.size(), 14u);
    EXPECT_GE(s.sentences.size(), 1u);
    for (const auto& sent : s.sentences) {
      EXPECT_LE(sent.sentence.words.size(), cfg.solver.gamma - 1);
    }
  }
}

TEST(Pipeline, DeterministicAcrossRunsAndExecution) {
  std::vector<Meeting> meetings;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    synth::TopicMeetingSpec spec;
    spec.seed = seed;
    spec.id = "m" + std::to_string(seed);
    meetings.push_back(synth::topic_meeting(spec));
  }
  const auto stats = synth::synthetic_stats(2);
  PipelineConfig cfg;
  const auto data = training_instances(meetings, cfg);
  auto model = train_classifier(apply_sampling(data, cfg.sampling), cfg.trainer);
  const auto a = run_pipeline(meetings, stats, &model, cfg, Execution::kSerial);
  const auto b = run_pipeline(meetings, stats, &model, cfg, Execution::kParallel);
  const auto c = run_pipeline(meetings, stats, &model, cfg, Execution::kParallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].text, b[i].text);
    EXPECT_EQ(summary_trace_json(a[i]), summary_trace_json(b[i]));
    EXPECT_EQ(summary_trace_json(b[i]), summary_trace_json(c[i]));
  }
  EXPECT_EQ(evaluation_report_json(a), evaluation_report_json(c));
  EXPECT_EQ(evaluation_report_csv(a), evaluation_report_csv(c));
}

TEST(Pipeline, MscFusion) {
  PipelineConfig cfg;
  cfg.fusion = FusionAlgo::kMsc;
  const auto s = summarize_meeting(fixture::kickoff(), RelationStats{}, nullptr, cfg);
  ASSERT_EQ(s.sentences.size(), 1u);
  EXPECT_FALSE(s.sentences[0].sentence.words.empty());
}

TEST(Pipeline, ErrorsNameMeetingAndStage) {
  auto m = fixture::kickoff();
  m.utterances[1].edges[0].governor = 99;
  try {
    summarize_meeting(m, fixture::background(), nullptr, PipelineConfig{});
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("kickoff"), std::string::npos);
    EXPECT_NE(what.find("validate"), std::string::npos);
  }
  PipelineConfig bad;
  bad.segmenter.window = 0;
  try {
    summarize_meeting(fixture::kickoff(), fixture::background(), nullptr, bad);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("segment"), std::string::npos);
  }
}

TEST(Cli, KickoffSummarizeExitsZero) {
  const auto out_dir = scratch("kickoff_out");
  const auto r = cli("summarize " + fixture::data_path("kickoff.json") + " --stats " +
                     background_stats_file() + " --out-dir " + out_dir.string());
  EXPECT_EQ(r.code, 0) << r.err;
  const auto text = read_file(out_dir / "kickoff.summary.txt");
  EXPECT_EQ(text, "We are designing a new remote control supposed to be original trendy and friendly.\n");
  EXPECT_TRUE(fs::exists(out_dir / "kickoff.trace.json"));
  const auto report = nlohmann::json::parse(read_file(out_dir / "report.json"));
  EXPECT_TRUE(report["meetings"].contains("kickoff"));
  EXPECT_EQ(read_file(out_dir / "report.csv").rfind("meeting,r1,r2,rsu4\n", 0), 0u);
}

TEST(Cli, MissingStatsFile) {
  const auto r = cli("summarize " + fixture::data_path("kickoff.json") +
                     " --stats /nonexistent/stats.json --out-dir " + scratch("x").string());
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("stats file not found"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("summarize").code, 2);
  EXPECT_EQ(cli("fuse " + fixture::data_path("kickoff.json")).code, 2);  // --stats required
  const auto bad = scratch("bad.json");
  write_file(bad, R"({"id": "bad", "utterances": [)");
  EXPECT_EQ(cli("fuse " + bad.string() + " --stats " + background_stats_file()).code, 3);
  const auto cfg = scratch("bad_cfg.json");
  write_file(cfg, R"({"nope": true})");
  EXPECT_EQ(cli("segment " + fixture::data_path("kickoff.json") + " --config " + cfg.string()).code, 2);
}

TEST(Cli, FuseExportsLpAndTrace) {
  const auto lp = scratch("kickoff.lp"), trace = scratch("kickoff_trace.json");
  const auto r = cli("fuse " + fixture::data_path("kickoff.json") + " --stats " +
                     background_stats_file() + " --export-lp " + lp.string() + " --trace " +
                     trace.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "We are designing a new remote control supposed to be original trendy and friendly.\n");
  const auto model = parse_lp(read_file(lp));
  EXPECT_FALSE(model.objective.empty());
  EXPECT_NE(read_file(trace).find("\"retained\""), std::string::npos);
  const auto short_run = cli("fuse " + fixture::data_path("kickoff.json") + " --stats " +
                             background_stats_file() + " --gamma-words 5");
  ASSERT_EQ(short_run.code, 0) << short_run.err;
  EXPECT_LE(tokenize_words(short_run.out).size(), 6u);
}

TEST(Cli, StatsSegmentTrainExtractEval) {
  const auto stats = scratch("stats_cli.json");
  ASSERT_EQ(cli("stats " + fixture::data_path("background") + " -o " + stats.string()).code, 0);
  EXPECT_EQ(load_relation_stats(stats).total_tokens, fixture::background().total_tokens);

  const auto dir = scratch("synthetic_meetings");
  fs::create_directories(dir);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    synth::TopicMeetingSpec spec;
    spec.seed = seed;
    spec.id = "s" + std::to_string(seed);
    write_file(dir / (spec.id + ".json"), write_transcript_json(synth::topic_meeting(spec)));
  }
  const auto seg = cli("segment " + (dir / "s1.json").string() + " --algo bayes --k 5");
  ASSERT_EQ(seg.code, 0) << seg.err;
  EXPECT_EQ(nlohmann::json::parse(seg.out)["segments"].size(), 5u);

  const auto model = scratch("model.json");
  ASSERT_EQ(cli("train " + dir.string() + " --classifier rf --sampling resample --trees 10 -o " +
                model.string()).code,
            0);
  const auto cv = cli("train " + dir.string() + " --classifier nb --folds 5");
  ASSERT_EQ(cv.code, 0) << cv.err;
  EXPECT_TRUE(nlohmann::json::parse(cv.out).contains("weighted"));
  const auto ex = cli("extract " + (dir / "s1.json").string() + " --model " + model.string());
  ASSERT_EQ(ex.code, 0) << ex.err;

  const auto out_dir = scratch("synthetic_out");
  const auto bg = scratch("synthetic_stats.json");
  write_file(bg, write_relation_stats(synth::synthetic_stats(1)));
  const auto sum = cli("summarize " + dir.string() + " --stats " + bg.string() + " --model " +
                       model.string() + " --out-dir " + out_dir.string() + " --seed 3");
  ASSERT_EQ(sum.code, 0) << sum.err;
  const auto first = read_file(out_dir / "s2.summary.txt");
  ASSERT_EQ(cli("summarize " + dir.string() + " --stats " + bg.string() + " --model " +
                model.string() + " --out-dir " + out_dir.string() + " --seed 3 --jobs 2").code,
            0);
  EXPECT_EQ(read_file(out_dir / "s2.summary.txt"), first);

  const auto cand = scratch("cand.txt"), ref = scratch("ref.txt");
  write_file(cand, "a b c\n");
  write_file(ref, "a b d\n");
  const auto ev = cli("eval --candidate " + cand.string() + " --reference " + ref.string());
  ASSERT_EQ(ev.code, 0) << ev.err;
  const auto report = nlohmann::json::parse(ev.out);
  EXPECT_NEAR(report["meetings"]["cand"]["r1"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(report["mean"]["r2"].get<double>(), 0.5, 1e-12);
}

}  // namespace
}  // namespace meetsum
