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

// meetsum: command-line front end for the summarization pipeline.

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meetsum/classifier.hpp"
#include "meetsum/cross_validation.hpp"
#include "meetsum/error.hpp"
#include "meetsum/evaluator.hpp"
#include "meetsum/ilp.hpp"
#include "meetsum/pipeline.hpp"
#include "meetsum/relation_stats.hpp"
#include "meetsum/transcript_io.hpp"

namespace fs = std::filesystem;
using namespace meetsum;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kData = 3, kTimeout = 4 };

// Directories expand to their transcripts, sorted by name.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (!fs::exists(p)) throw ConfigError("input not found: " + in);
    if (!fs::is_directory(p)) {
      out.push_back(p);
      continue;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(p)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".json" || ext == ".conllu" || ext == ".conll")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    out.insert(out.end(), files.begin(), files.end());
  }
  if (out.empty()) throw ConfigError("no input transcripts");
  return out;
}

std::vector<Meeting> load_meetings(const std::vector<std::string>& inputs) {
  std::vector<Meeting> meetings;
  for (const auto& p : expand_inputs(inputs)) {
    try {
      meetings.push_back(load_transcript(p));
    } catch (const ParseError& e) {
      throw ValidationError(p.string() + ": " + e.what());
    }
  }
  return meetings;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

std::string segments_json(const Meeting& m, const std::vector<Segment>& segments) {
  json arr = json::array();
  for (const auto& s : segments) {
    json ids = json::array();
    for (std::size_t p = s.start; p < s.end; ++p) ids.push_back(m.utterances[p].id);
    arr.push_back({{"index", s.index}, {"start", s.start}, {"end", s.end}, {"utterances", ids}});
  }
  return json{{"meeting", m.id}, {"segments", arr}}.dump(2) + "\n";
}

std::string prf_json(const PrfReport& r) {
  auto one = [](const ClassMetrics& c) {
    return json{{"precision", c.precision}, {"recall", c.recall}, {"f", c.f}, {"support", c.support}};
  };
  return json{{"positive", one(r.positive)}, {"negative", one(r.negative)},
              {"weighted", one(r.weighted)}}
             .dump(2) +
         "\n";
}

struct CommonOptions {
  std::string config;
  std::uint64_t seed = 1;
  std::size_t jobs = 0;
};

PipelineConfig load_config(const CLI::App& sub, const CommonOptions& opts) {
  PipelineConfig cfg;
  if (!opts.config.empty()) {
    if (!fs::exists(opts.config)) throw ConfigError("config file not found: " + opts.config);
    cfg = parse_pipeline_config(read_file(opts.config));
  }
  if (sub.count("--seed")) apply_seed(cfg, opts.seed);
  if (sub.count("--jobs")) cfg.jobs = opts.jobs;
  if (cfg.jobs > 0) omp_set_num_threads(static_cast<int>(cfg.jobs));
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abstractive meeting summarization"};
  app.require_subcommand(1);

  CommonOptions common;
  std::vector<std::string> inputs;
  std::string out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "JSON config file");
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--jobs", common.jobs, "Worker threads (0: all)");
  };

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Build relation statistics from a parsed corpus");
  stats_cmd->add_option("inputs", inputs, "Transcripts or directories")->required();
  stats_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

  // segment
  std::string seg_algo = "lcseg";
  std::size_t seg_k = 14;
  auto* seg_cmd = app.add_subcommand("segment", "Split meetings into topic segments");
  seg_cmd->add_option("inputs", inputs)->required();
  seg_cmd->add_option("--algo", seg_algo, "lcseg or bayes");
  seg_cmd->add_option("-k,--k,--segments", seg_k, "Number of segments (0: automatic, lcseg only)");
  std::size_t hiatus = 11, window = 15;
  double alpha = 0.2;
  seg_cmd->add_option("--hiatus", hiatus, "Largest gap inside a lexical chain");
  seg_cmd->add_option("--window", window, "Utterances on each side of a gap");
  seg_cmd->add_option("--alpha", alpha, "Dirichlet concentration (bayes)");
  seg_cmd->add_option("-o,--out", out_path);
  add_common(seg_cmd);

  // train
  std::string classifier = "rf", sampling = "resample";
  std::size_t trees = 100, folds = 0;
  auto* train_cmd = app.add_subcommand("train", "Train the utterance classifier");
  train_cmd->add_option("inputs", inputs)->required();
  train_cmd->add_option("--classifier", classifier, "nb or rf");
  train_cmd->add_option("--sampling", sampling, "none, weight, resample or smote");
  train_cmd->add_option("--trees", trees);
  train_cmd->add_option("--cv,--folds", folds, "Report k-fold cross-validation instead of saving");
  train_cmd->add_option("-o,--out", out_path);
  add_common(train_cmd);

  // extract
  std::string model_path;
  auto* extract_cmd = app.add_subcommand("extract", "Classify utterances per segment");
  extract_cmd->add_option("inputs", inputs)->required();
  extract_cmd->add_option("--model", model_path);
  extract_cmd->add_option("-o,--out", out_path);
  add_common(extract_cmd);

  // fuse
  std::string fuse_algo = "ilp", stats_path, lp_path, trace_path;
  std::size_t gamma_words = 20;
  double time_limit = 30;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse all utterances of one transcript into a sentence");
  fuse_cmd->add_option("input", inputs)->required()->expected(1);
  fuse_cmd->add_option("--algo", fuse_algo, "ilp or msc");
  fuse_cmd->add_option("--gamma-words", gamma_words, "Maximum sentence length in words");
  fuse_cmd->add_option("--time-limit", time_limit, "Solver time limit in seconds");
  fuse_cmd->add_option("--stats", stats_path, "Relation statistics file");
  fuse_cmd->add_option("--export-lp", lp_path, "Write the ILP in LP format");
  fuse_cmd->add_option("--trace", trace_path, "Write a JSON trace of the solution");
  add_common(fuse_cmd);

  // summarize
  std::string out_dir = "summaries";
  auto* sum_cmd = app.add_subcommand("summarize", "Run the whole pipeline");
  sum_cmd->add_option("inputs", inputs)->required();
  sum_cmd->add_option("--stats", stats_path);
  sum_cmd->add_option("--model", model_path);
  sum_cmd->add_option("--algo", fuse_algo, "ilp or msc");
  sum_cmd->add_option("--segments", seg_k);
  sum_cmd->add_option("--out-dir", out_dir);
  add_common(sum_cmd);

  // eval
  std::string candidate, reference, csv_path;
  std::size_t limit = 0;
  auto* eval_cmd = app.add_subcommand("eval", "ROUGE recall of a summary against a reference");
  eval_cmd->add_option("--candidate", candidate, "Summary file or directory")->required();
  eval_cmd->add_option("--reference", reference, "Reference file or directory")->required();
  eval_cmd->add_option("--limit", limit, "Word cap on the candidate (0: none)");
  eval_cmd->add_option("-o,--out", out_path, "JSON report");
  eval_cmd->add_option("--csv", csv_path, "CSV report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*stats_cmd) {
      const auto meetings = load_meetings(inputs);
      emit(out_path, write_relation_stats(build_relation_stats(meetings)));
    } else if (*seg_cmd) {
      auto cfg = load_config(*seg_cmd, common);
      if (seg_cmd->count("--algo")) cfg.segmenter_algo = parse_segmenter_algo(seg_algo);
      if (seg_cmd->count("--segments")) cfg.segmenter.num_segments = seg_k;
      if (seg_cmd->count("--hiatus")) cfg.segmenter.hiatus = hiatus;
      if (seg_cmd->count("--window")) cfg.segmenter.window = window;
      if (seg_cmd->count("--alpha")) cfg.segmenter.alpha = alpha;
      std::string out;
      for (const auto& m : load_meetings(inputs)) {
        out += segments_json(m, segment_meeting(m, cfg.segmenter_algo, cfg.segmenter));
      }
      emit(out_path, out);
    } else if (*train_cmd) {
      auto cfg = load_config(*train_cmd, common);
      if (train_cmd->count("--classifier")) cfg.trainer.kind = parse_classifier_kind(classifier);
      if (train_cmd->count("--sampling")) cfg.sampling.kind = parse_sampling_kind(sampling);
      if (train_cmd->count("--trees")) cfg.trainer.n_trees = trees;
      const auto data = training_instances(load_meetings(inputs), cfg);
      if (data.empty()) throw ValidationError("no utterance carries a gold label");
      if (folds > 0) {
        emit(out_path, prf_json(cross_validate(data, folds, cfg.trainer, cfg.sampling)));
      } else {
        auto model = train_classifier(apply_sampling(data, cfg.sampling), cfg.trainer);
        model.sampling = cfg.sampling;
        emit(out_path, write_model(model));
      }
    } else if (*extract_cmd) {
      auto cfg = load_config(*extract_cmd, common);
      if (extract_cmd->count("--model")) cfg.model_path = model_path;
      std::optional<ClassifierModel> model;
      if (!cfg.model_path.empty()) {
        if (!fs::exists(cfg.model_path)) throw ConfigError("model file not found: " + cfg.model_path);
        model = parse_model(read_file(cfg.model_path));
      }
      json out = json::array();
      for (const auto& m : load_meetings(inputs)) {
        const auto segments = segment_for_summary(m, cfg);
        const auto picks = select_utterances(m, segments, model ? &*model : nullptr);
        json segs = json::array();
        for (std::size_t s = 0; s < segments.size(); ++s) {
          json utts = json::array();
          for (const auto& u : picks[s]) {
            utts.push_back({{"id", m.utterances[u.position].id},
                            {"selected", u.selected},
                            {"score", u.score}});
          }
          segs.push_back({{"segment", s}, {"utterances", utts}});
        }
        out.push_back({{"meeting", m.id}, {"segments", segs}});
      }
      emit(out_path, out.dump(2) + "\n");
    } else if (*fuse_cmd) {
      auto cfg = load_config(*fuse_cmd, common);
      if (fuse_cmd->count("--algo")) cfg.fusion = parse_fusion_algo(fuse_algo);
      if (fuse_cmd->count("--gamma-words")) cfg.solver.gamma = SolverConfig::gamma_for_words(gamma_words);
      if (fuse_cmd->count("--time-limit")) cfg.solver.time_limit = time_limit;
      if (fuse_cmd->count("--stats")) cfg.stats_path = stats_path;
      if (cfg.solver.time_limit <= 0) throw ConfigError("time limit must be positive");
      RelationStats stats;
      if (cfg.fusion == FusionAlgo::kIlp) {
        if (cfg.stats_path.empty()) throw ConfigError("--stats is required for ILP fusion");
        stats = load_relation_stats(cfg.stats_path);
      }
      const auto meetings = load_meetings(inputs);
      const auto& utts = meetings.front().utterances;
      if (!lp_path.empty()) {
        std::vector<Utterance> stripped;
        for (const auto& u : utts) {
          auto s = strip_for_fusion(u);
          if (!s.tokens.empty()) stripped.push_back(std::move(s));
        }
        const auto graph = merge_utterances(resolve_pronouns(stripped));
        const auto inst =
            build_instance(graph, stats, segment_term_frequency(stripped), cfg.solver);
        write_file(lp_path, export_lp(inst));
      }
      const auto summary = fuse_utterances(utts, stats, cfg);
      if (!trace_path.empty()) {
        MeetingSummary ms;
        ms.meeting_id = meetings.front().id;
        ms.sentences.push_back(summary);
        write_file(trace_path, summary_trace_json(ms));
      }
      std::cout << summary.sentence.text << "\n";
    } else if (*sum_cmd) {
      auto cfg = load_config(*sum_cmd, common);
      if (sum_cmd->count("--stats")) cfg.stats_path = stats_path;
      if (sum_cmd->count("--model")) cfg.model_path = model_path;
      if (sum_cmd->count("--algo")) cfg.fusion = parse_fusion_algo(fuse_algo);
      if (sum_cmd->count("--segments")) cfg.segmenter.num_segments = seg_k;
      RelationStats stats;
      if (cfg.fusion == FusionAlgo::kIlp) {
        if (cfg.stats_path.empty()) throw ConfigError("--stats is required for ILP fusion");
        stats = load_relation_stats(cfg.stats_path);
      }
      std::optional<ClassifierModel> model;
      if (!cfg.model_path.empty()) {
        if (!fs::exists(cfg.model_path)) throw ConfigError("model file not found: " + cfg.model_path);
        model = parse_model(read_file(cfg.model_path));
      }
      const auto meetings = load_meetings(inputs);
      const auto summaries = run_pipeline(meetings, stats, model ? &*model : nullptr, cfg);
      fs::create_directories(out_dir);
      bool any_gold = false;
      for (const auto& s : summaries) {
        write_file(fs::path(out_dir) / (s.meeting_id + ".summary.txt"), s.text + "\n");
        write_file(fs::path(out_dir) / (s.meeting_id + ".trace.json"), summary_trace_json(s));
        any_gold |= s.rouge.has_value();
      }
      if (any_gold) {
        write_file(fs::path(out_dir) / "report.json", evaluation_report_json(summaries));
        write_file(fs::path(out_dir) / "report.csv", evaluation_report_csv(summaries));
      }
      std::cout << "wrote " << summaries.size() << " summaries to " << out_dir << "\n";
    } else if (*eval_cmd) {
      // Pairs of (meeting id, candidate file, reference file). Directories
      // pair <id>.summary.txt (or <id>.txt) with <id>.txt by id.
      std::vector<std::tuple<std::string, fs::path, fs::path>> pairs;
      auto meeting_id = [](const fs::path& p) {
        std::string stem = p.stem().string();
        const std::string suffix = ".summary";
        if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
        return stem;
      };
      for (const auto& p : {candidate, reference}) {
        if (!fs::exists(p)) throw ConfigError("file not found: " + p);
      }
      if (fs::is_directory(candidate)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(candidate)) {
          if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
          const auto id = meeting_id(f);
          const auto ref = fs::path(reference) / (id + ".txt");
          if (!fs::exists(ref)) throw ConfigError("no reference for meeting '" + id + "': " + ref.string());
          pairs.emplace_back(id, f, ref);
        }
        if (pairs.empty()) throw ConfigError("no candidate summaries in " + candidate);
      } else {
        pairs.emplace_back(meeting_id(candidate), candidate, reference);
      }
      json meetings = json::object();
      RougeScores mean;
      std::string csv = "meeting,r1,r2,rsu4\n";
      for (const auto& [id, cand, ref] : pairs) {
        const auto sc = rouge_all(tokenize_words(read_file(cand)), tokenize_words(read_file(ref)), limit);
        meetings[id] = {{"r1", sc.r1}, {"r2", sc.r2}, {"rsu4", sc.rsu4}};
        mean.r1 += sc.r1 / static_cast<double>(pairs.size());
        mean.r2 += sc.r2 / static_cast<double>(pairs.size());
        mean.rsu4 += sc.rsu4 / static_cast<double>(pairs.size());
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n", id.c_str(), sc.r1, sc.r2, sc.rsu4);
        csv += buf;
      }
      emit(out_path, json{{"meetings", meetings},
                          {"mean", {{"r1", mean.r1}, {"r2", mean.r2}, {"rsu4", mean.rsu4}}},
                          {"limit", limit}}
                             .dump(2) +
                         "\n");
      if (!csv_path.empty()) write_file(csv_path, csv);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == SolverError::Kind::kTimeout ? kTimeout : kData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
