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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "meetsum/cross_validation.hpp"
#include "meetsum/error.hpp"
#include "meetsum/evaluator.hpp"
#include "meetsum/fusion_graph.hpp"
#include "meetsum/ilp.hpp"
#include "meetsum/linearizer.hpp"
#include "meetsum/pipeline.hpp"
#include "meetsum/relation_stats.hpp"
#include "meetsum/segmenter.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace meetsum;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;  // first failure is the interesting one
    pass = false;
  }
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  std::printf("%s %s%s%s\n", o.pass ? "PASS" : "FAIL", name, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

unsigned mask_of(const std::vector<int>& edges) {
  unsigned m = 0;
  for (int e : edges) m |= 1u << e;
  return m;
}

Outcome ilp_exactness() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2026);
  const auto stats = synth::tiny_stats(7);
  std::size_t merged = 0, infeasible = 0;
  for (int trial = 0; merged < 200; ++trial) {
    const auto inst = synth::random_merged_instance(rng, stats, 12);
    const auto best = oracle::best_subset(inst);
    if (!best) {
      ++infeasible;
      try {
        solve_exact(inst, {});
        o.fail("solver found a tree the oracle rules out in trial " + std::to_string(trial));
      } catch (const SolverError&) {
      }
      continue;
    }
    const auto sol = solve_exact(inst, {});
    if (!sol.optimal || std::abs(sol.objective - best->objective) > 1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "trial %d: solver %.12f vs oracle %.12f", trial,
                    sol.objective, best->objective);
      o.fail(buf);
    }
    if (!oracle::feasible_subset(inst, mask_of(sol.retained))) {
      o.fail("infeasible solution in trial " + std::to_string(trial));
    }
    ++merged;
  }
  const double secs = seconds_since(t0);
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(merged) + " graphs (+" + std::to_string(infeasible) +
               " infeasible, agreed), " + std::to_string(secs) + " s";
  }
  return o;
}

Outcome relation_stats_table() {
  Outcome o;
  const std::vector<Meeting> docs{load_transcript(fixture::data_path("produced_relations.conllu"))};
  const auto stats = build_relation_stats(docs);
  const auto& row = stats.label_probs.at(RelationStats::governor_key("produced", "VBN"));
  const std::map<std::string, double> expected{
      {"auxpass", 0.286}, {"nsubjpass", 0.214}, {"aux", 0.214}, {"prep_with", 0.071},
      {"agent", 0.071},   {"prep_in", 0.071},   {"advmod", 0.071}};
  if (row.size() != expected.size()) o.fail("row has " + std::to_string(row.size()) + " labels");
  for (const auto& [label, p] : expected) {
    const auto it = row.find(label);
    if (it == row.end()) {
      o.fail("missing " + label);
      continue;
    }
    char rounded[16], want[16];
    std::snprintf(rounded, sizeof(rounded), "%.3f", it->second);
    std::snprintf(want, sizeof(want), "%.3f", p);
    if (std::string(rounded) != want) o.fail(label + " = " + rounded + ", expected " + want);
  }
  return o;
}

Outcome worked_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto summary =
      summarize_meeting(fixture::kickoff(), fixture::background(), nullptr, PipelineConfig{});
  const double secs = seconds_since(t0);
  if (summary.sentences.size() != 1) {
    o.fail(std::to_string(summary.sentences.size()) + " sentences");
    return o;
  }
  auto bag = [](const std::string& s) {
    auto w = tokenize_words(s);
    std::sort(w.begin(), w.end());
    return w;
  };
  const std::string expected =
      "We are designing a new remote control supposed to be original trendy and friendly.";
  if (bag(summary.text) != bag(expected)) o.fail("got \"" + summary.text + "\"");
  if (secs >= 5) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "\"" + summary.text + "\"";
  return o;
}

Outcome rouge_suite() {
  Outcome o;
  const auto w = [](const char* s) { return tokenize_words(s); };
  if (rouge_n(w("a b c"), w("a b d"), 1) != 2.0 / 3.0) o.fail("R-1 hand count");
  if (rouge_n(w("a b c"), w("a b d"), 2) != 0.5) o.fail("R-2 hand count");
  if (rouge_su4(w("a c"), w("a b c")) != 0.5) o.fail("SU4 hand count");
  std::mt19937_64 rng(606);
  const std::vector<std::string> vocab{"the", "remote", "is", "red", "The", "button"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> cand(1 + rng() % 30), ref(2 + rng() % 30);
    for (auto& x : cand) x = vocab[rng() % vocab.size()];
    for (auto& x : ref) x = vocab[rng() % vocab.size()];
    const std::size_t limit = trial % 4 == 0 ? 1 + rng() % 10 : 0;
    const bool same = rouge_n(cand, ref, 1, limit) == oracle::ngram_recall(cand, ref, 1, limit) &&
                      rouge_n(cand, ref, 2, limit) == oracle::ngram_recall(cand, ref, 2, limit) &&
                      rouge_su4(cand, ref, limit) == oracle::su4_recall(cand, ref, limit);
    if (!same) o.fail("random case " + std::to_string(trial));
  }
  return o;
}

Outcome segmentation_recovery() {
  Outcome o;
  synth::TopicMeetingSpec spec;
  spec.topics = 5;
  spec.per_topic = 20;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    spec.seed = seed;
    const auto m = synth::topic_meeting(spec);
    const auto truth = synth::true_boundaries(spec);
    SegmenterConfig cfg;
    cfg.num_segments = 5;
    for (auto algo : {SegmenterAlgo::kLcseg, SegmenterAlgo::kBayes}) {
      const auto segs = segment_meeting(m, algo, cfg);
      std::vector<std::size_t> got;
      for (std::size_t i = 1; i < segs.size(); ++i) got.push_back(segs[i].start);
      if (got != truth) {
        o.fail((algo == SegmenterAlgo::kLcseg ? std::string("lcseg") : std::string("bayes")) +
               " missed a boundary on seed " + std::to_string(seed));
      }
    }
  }
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = synth::random_meeting(rng, 3, 12, "x" + std::to_string(trial));
    SegmenterConfig cfg;
    cfg.num_segments = 1 + rng() % std::min<std::size_t>(m.utterances.size(), 5);
    const auto counts = content_counts(m);
    std::set<std::string> vocab;
    for (const auto& c : counts) for (const auto& kv : c) vocab.insert(kv.first);
    const auto best = oracle::best_partition(counts, cfg.num_segments,
                                             std::max<std::size_t>(vocab.size(), 1), cfg.alpha);
    const auto segs = segment_bayes(m, cfg);
    if (std::abs(bayes_objective(m, segs, cfg.alpha) - best.score) > 1e-9) {
      o.fail("bayes below exhaustive optimum on trial " + std::to_string(trial));
    }
  }
  return o;
}

Outcome classifier_sampling() {
  Outcome o;
  const auto data = synth::imbalanced_dataset(1000, 0.1, 4242);
  TrainerConfig rf;
  rf.kind = ClassifierKind::kRandomForest;
  rf.seed = 4242;
  auto run = [&](SamplingKind kind) {
    return cross_validate(data, 10, rf, SamplingStrategy{kind, 5, 4242});
  };
  const auto none = run(SamplingKind::kNone);
  const auto resample = run(SamplingKind::kResample);
  char buf[256];
  std::snprintf(buf, sizeof(buf), "resample F=%.3f; minority recall none=%.3f", resample.weighted.f,
                none.positive.recall);
  std::string detail = buf;
  if (resample.weighted.f < 0.9) o.fail(detail);
  for (auto kind : {SamplingKind::kWeight, SamplingKind::kResample, SamplingKind::kSmote}) {
    const auto r = kind == SamplingKind::kResample ? resample : run(kind);
    std::snprintf(buf, sizeof(buf), " %s=%.3f", to_string(kind).c_str(), r.positive.recall);
    detail += buf;
    if (!(r.positive.recall > none.positive.recall)) {
      o.fail(to_string(kind) + " does not raise minority recall (" + detail + ")");
    }
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome invariant_fuzz() {
  Outcome o;
  const auto stats = synth::tiny_stats(3);
  std::mt19937_64 rng(31337);
  std::size_t solved = 0, infeasible = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string tag = "trial " + std::to_string(trial);
    std::vector<Utterance> utts;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) utts.push_back(synth::tiny_utterance(rng, i));
    PipelineConfig cfg;
    cfg.solver.gamma = 3 + rng() % 6;

    std::vector<Utterance> stripped;
    for (const auto& u : utts) {
      auto s = strip_for_fusion(u);
      if (!s.tokens.empty()) stripped.push_back(std::move(s));
    }
    if (stripped.empty()) continue;
    const auto graph = merge_utterances(resolve_pronouns(stripped));
    const auto inst = build_instance(graph, stats, segment_term_frequency(stripped), cfg.solver);
    if (inst.edges.size() > 20) continue;  // keeps the subset oracle cheap

    FusionSolution sol;
    try {
      sol = solve_exact(inst, cfg.solver);
    } catch (const SolverError&) {
      ++infeasible;
      if (inst.edges.size() <= 16 && oracle::best_subset(inst)) o.fail(tag + ": solver reports infeasible, oracle disagrees");
      continue;
    }
    ++solved;
    // Start/end/gamma/anti-parallel/single head/rootedness/coupling, checked
    // by the independent subset test.
    if (!oracle::feasible_subset(inst, mask_of(sol.retained))) o.fail(tag + ": constraint violated");
    if (!check_solution(inst, sol.retained).empty()) o.fail(tag + ": checker flags the solution");

    const auto sentence = linearize(graph, sol.retained);
    std::multiset<int> kept, out(sentence.nodes.begin(), sentence.nodes.end());
    for (int e : sol.retained) {
      if (!graph.is_dummy(inst.edges[e].dep)) kept.insert(inst.edges[e].dep);
    }
    if (kept != out) o.fail(tag + ": linearizer changed the word multiset");
    if (sentence.words.size() + 1 > cfg.solver.gamma) o.fail(tag + ": sentence over the cap");

    // Same seed, same everything.
    const auto again = fuse_utterances(utts, stats, cfg);
    const auto twice = fuse_utterances(utts, stats, cfg);
    if (again.sentence.text != twice.sentence.text || again.objective != twice.objective ||
        again.sentence.text != sentence.text) {
      o.fail(tag + ": nondeterministic");
    }
  }
  // Whole-meeting runs, serial against parallel.
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Meeting> ms{synth::random_meeting(rng, 20, 60, "r" + std::to_string(trial))};
    PipelineConfig cfg;
    apply_seed(cfg, 100 + trial);
    const auto big = synth::synthetic_stats(5);
    const auto a = run_pipeline(ms, big, nullptr, cfg, Execution::kSerial);
    const auto b = run_pipeline(ms, big, nullptr, cfg, Execution::kParallel);
    if (summary_trace_json(a[0]) != summary_trace_json(b[0])) o.fail("pipeline differs across runs");
  }
  if (solved < 500) o.fail("only " + std::to_string(solved) + " feasible instances");
  if (o.pass) {
    o.detail = std::to_string(solved) + " solved, " + std::to_string(infeasible) + " infeasible";
  }
  return o;
}

}  // namespace

int main() {
  report("ilp_exactness", ilp_exactness);
  report("relation_stats_table", relation_stats_table);
  report("worked_example", worked_example);
  report("rouge_hand_counts", rouge_suite);
  report("segmentation_recovery", segmentation_recovery);
  report("classifier_sampling", classifier_sampling);
  report("invariant_fuzz", invariant_fuzz);
  return failures == 0 ? 0 : 1;
}
