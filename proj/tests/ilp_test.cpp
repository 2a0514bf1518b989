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

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "meetsum/error.hpp"
#include "meetsum/ilp.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace meetsum {
namespace {

using E = ILPInstance::Edge;

// Hand-built graph: start, end, then word nodes.
MergedGraph tiny_graph(std::size_t n_utterances) {
  MergedGraph g;
  g.nodes.push_back({0, "<start>", "START", "<start>", {}, NodeKind::kStart});
  g.nodes.push_back({1, "<end>", "END", "<end>", {}, NodeKind::kEnd});
  g.nodes.push_back({2, "produced", "VBN", "produced", {{0, 0}}, NodeKind::kWord});
  g.nodes.push_back({3, "was", "VBD", "was", {{0, 1}}, NodeKind::kWord});
  g.n_utterances = n_utterances;
  return g;
}

TEST(Coefficient, ProductOfTerms) {
  const auto g = tiny_graph(4);
  RelationStats stats;
  stats.label_probs["produced|VBN"]["auxpass"] = 0.286;
  stats.word_freq = {{"was", 10}};
  stats.total_tokens = 1000;
  const SegmentTf tf{{"was", 2}};
  const GraphEdge e{2, 3, "auxpass", {1, 2}};
  const double info = 2 * std::log(100.0);
  EXPECT_NEAR(edge_coefficient(e, g, stats, tf, 0.001), 0.286 * info * 0.5, 1e-12);
  EXPECT_NEAR(0.286 * 10 * 0.5, 1.43, 1e-12);

  const GraphEdge last{2, 3, "auxpass", {4}};
  EXPECT_NEAR(edge_coefficient(last, g, stats, tf, 0.001), 0.286 * info, 1e-12);
  EXPECT_DOUBLE_EQ(edge_coefficient(e, g, stats, {}, 0.001), 0.0);
  EXPECT_DOUBLE_EQ(edge_coefficient({0, 2, "root", {1}}, g, stats, tf, 0.001), 0.0);
  EXPECT_DOUBLE_EQ(edge_coefficient({3, 1, "end", {1}}, g, stats, tf, 0.001), 0.0);
  // Unseen governor gets the floor.
  const GraphEdge unseen{3, 2, "dep", {4}};
  RelationStats s2 = stats;
  s2.word_freq["produced"] = 10;
  EXPECT_NEAR(edge_coefficient(unseen, g, s2, {{"produced", 1}}, 0.01), 0.01 * std::log(100.0),
              1e-12);
}

TEST(Instance, ChainIsForced) {
  // start=0 end=1 a=2 b=3
  const auto inst = make_instance(4, 0, 1, {{0, 2, "root"}, {2, 3, "dobj"}, {3, 1, "end"}},
                                  {0, 0.5, 0}, 3);
  const auto sol = solve_exact(inst, {});
  EXPECT_EQ(sol.retained, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(sol.optimal);
  EXPECT_DOUBLE_EQ(sol.objective, 0.5);
  EXPECT_TRUE(check_solution(inst, sol.retained).empty());
}

TEST(Instance, SingleUtteranceFeasibleIffWithinGamma) {
  const auto k = fixture::kickoff();
  const auto g = merge_utterances({strip_for_fusion(k.utterances[1])});
  std::vector<int> all(g.edges.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  SolverConfig cfg;
  cfg.gamma = g.edges.size();
  EXPECT_TRUE(check_solution(build_instance(g, fixture::background(), {}, cfg), all).empty());
  cfg.gamma = g.edges.size() - 1;
  EXPECT_EQ(check_solution(build_instance(g, fixture::background(), {}, cfg), all),
            (std::vector<std::string>{"gamma"}));
}

TEST(Instance, AntiParallelNeverBoth) {
  // u=2, v=3 connected both ways.
  const auto inst = make_instance(
      4, 0, 1, {{0, 2, "root"}, {0, 3, "root"}, {2, 3, "dobj"}, {3, 2, "nsubj"}, {2, 1, "end"}, {3, 1, "end"}},
      {0, 0, 1.0, 1.0, 0, 0}, 10);
  EXPECT_FALSE(check_solution(inst, {0, 2, 3, 4}).empty());
  const auto sol = solve_exact(inst, {});
  const bool both = std::count(sol.retained.begin(), sol.retained.end(), 2) &&
                    std::count(sol.retained.begin(), sol.retained.end(), 3);
  EXPECT_FALSE(both);
  EXPECT_DOUBLE_EQ(sol.objective, 1.0);
}

TEST(Instance, CouplingKeepsExactlyOneDeterminer) {
  // n=2 with two det dependents 3, 4 and a verb root 5.
  const auto inst = make_instance(
      6, 0, 1,
      {{0, 5, "root"}, {5, 2, "dobj"}, {2, 3, "det"}, {2, 4, "det"}, {2, 1, "end"}, {5, 1, "end"}},
      {0, 0.3, 0.8, 0.9, 0, 0}, 10);
  const auto sol = solve_exact(inst, {});
  EXPECT_NEAR(sol.objective, 1.2, 1e-12);
  EXPECT_EQ(std::count(sol.retained.begin(), sol.retained.end(), 3), 1);
  EXPECT_EQ(std::count(sol.retained.begin(), sol.retained.end(), 2), 0);
  EXPECT_EQ(check_solution(inst, {0, 1, 2, 3, 4}), (std::vector<std::string>{"coupling"}));
  EXPECT_EQ(check_solution(inst, {0, 1, 4}), (std::vector<std::string>{"coupling"}));
  // A dropped governor keeps none.
  EXPECT_TRUE(check_solution(inst, {0, 5}).empty());
  EXPECT_FALSE(check_solution(inst, {0, 2, 5}).empty());
}

TEST(Instance, RejectsBadShapes) {
  EXPECT_THROW(make_instance(3, 0, 1, {{2, 0, "x"}}, {0}, 5), ValidationError);
  EXPECT_THROW(make_instance(3, 0, 1, {{0, 2, "root"}}, {0, 1}, 5), ValidationError);
  EXPECT_THROW(make_instance(3, 0, 1, {{0, 2, "root"}}, {NAN}, 5), ValidationError);
  MergedGraph g = tiny_graph(1);
  g.edges.push_back({2, 3, "auxpass", {1}});
  EXPECT_THROW(build_instance(g, {}, {}, SolverConfig{}), Error);
  SolverConfig bad;
  bad.gamma = 2;
  EXPECT_THROW(build_instance(g, {}, {}, bad), ConfigError);
}

TEST(Solver, InfeasibleAndConfigErrors) {
  const auto inst = make_instance(4, 0, 1, {{0, 2, "root"}, {2, 3, "dobj"}, {3, 1, "end"}},
                                  {0, 0.5, 0}, 2);
  try {
    solve_exact(inst, {});
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::kInfeasible);
  }
  SolverConfig cfg;
  cfg.time_limit = 0;
  EXPECT_THROW(solve_exact(inst, cfg), ConfigError);
}

TEST(Solver, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(99);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto inst = synth::random_instance(rng, 12);
    const auto best = oracle::best_subset(inst);
    if (!best) {
      EXPECT_THROW(solve_exact(inst, {}), SolverError);
      continue;
    }
    ++feasible;
    const auto sol = solve_exact(inst, {});
    EXPECT_TRUE(sol.optimal);
    EXPECT_NEAR(sol.objective, best->objective, 1e-9) << "trial " << trial;
    EXPECT_TRUE(check_solution(inst, sol.retained).empty());
    EXPECT_TRUE(oracle::feasible_subset(inst, [&] {
      unsigned m = 0;
      for (int e : sol.retained) m |= 1u << e;
      return m;
    }()));
  }
  EXPECT_GT(feasible, 100);
}

TEST(Solver, MatchesOracleOnMergedGraphs) {
  std::mt19937_64 rng(5);
  const auto stats = synth::tiny_stats(1);
  int compared = 0;
  for (int trial = 0; compared < 200; ++trial) {
    const auto inst = synth::random_merged_instance(rng, stats, 12);
    const auto best = oracle::best_subset(inst);
    if (!best) {
      // A tight gamma or a forced determiner can rule out every tree.
      EXPECT_THROW(solve_exact(inst, {}), SolverError) << "trial " << trial;
      continue;
    }
    ++compared;
    const auto sol = solve_exact(inst, {});
    EXPECT_NEAR(sol.objective, best->objective, 1e-9) << "trial " << trial;
    EXPECT_TRUE(check_solution(inst, sol.retained).empty());
  }
}

TEST(Solver, CheckerAgreesWithOracleOnEverySubset) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = synth::random_instance(rng, 9);
    const unsigned m = static_cast<unsigned>(inst.edges.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> kept;
      for (unsigned i = 0; i < m; ++i) if ((mask >> i) & 1u) kept.push_back(static_cast<int>(i));
      const bool ok = check_solution(inst, kept).empty();
      ASSERT_EQ(ok, oracle::feasible_subset(inst, mask)) << "trial " << trial << " mask " << mask;
      if (ok) EXPECT_TRUE(rows_satisfied(inst.rows(), tree_assignment(inst, kept)));
    }
  }
}

TEST(Solver, AddingPositiveEdgeNeverHurts) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = synth::random_instance(rng, 10);
    std::optional<FusionSolution> base;
    try {
      base = solve_exact(inst, {});
    } catch (const SolverError&) {
      continue;
    }
    auto edges = inst.edges;
    auto coeffs = inst.coeffs;
    const int gov = 2 + static_cast<int>(rng() % (inst.n_nodes - 2));
    int dep = 2 + static_cast<int>(rng() % (inst.n_nodes - 2));
    if (dep == gov) dep = inst.end_id;
    edges.push_back({gov, dep, "added"});
    coeffs.push_back(0.1 + static_cast<double>(rng() % 100) / 50.0);
    const auto bigger = make_instance(inst.n_nodes, inst.start_id, inst.end_id, edges, coeffs,
                                      inst.gamma);
    EXPECT_GE(solve_exact(bigger, {}).objective, base->objective - 1e-12);
  }
}

TEST(Solver, ScalingKeepsTheArgmax) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = synth::random_instance(rng, 10);
    const auto best = oracle::best_subset(inst);
    if (!best) continue;
    for (double scale : {0.001, 3.0, 1000.0}) {
      auto coeffs = inst.coeffs;
      for (auto& c : coeffs) c *= scale;
      const auto scaled = make_instance(inst.n_nodes, inst.start_id, inst.end_id, inst.edges,
                                        coeffs, inst.gamma);
      const auto sol = solve_exact(scaled, {});
      double original = 0;
      for (int e : sol.retained) original += inst.coeffs[e];
      EXPECT_NEAR(original, best->objective, 1e-9);
    }
  }
}

TEST(Solver, SerialResultIsReproducible) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = synth::random_instance(rng, 12);
    try {
      const auto a = solve_exact(inst, {});
      const auto b = solve_exact(inst, {});
      EXPECT_EQ(a.retained, b.retained);
    } catch (const SolverError&) {
    }
  }
}

TEST(Solver, TimeoutReturnsIncumbentOrThrows) {
  // A wide merged graph with a tiny budget.
  std::mt19937_64 rng(3);
  std::vector<Utterance> utts;
  for (std::size_t i = 0; i < 12; ++i) utts.push_back(synth::tiny_utterance(rng, i));
  const auto g = merge_utterances(utts);
  SolverConfig cfg;
  cfg.time_limit = 1e-9;
  const auto inst = build_instance(g, synth::tiny_stats(1), segment_term_frequency(utts), cfg);
  try {
    const auto sol = solve_exact(inst, cfg);
    EXPECT_TRUE(check_solution(inst, sol.retained).empty());
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::kTimeout);
  }
}

TEST(Lp, ExportMentionsObjectiveAndGamma) {
  const auto inst = make_instance(4, 0, 1, {{0, 2, "root"}, {2, 3, "dobj"}, {3, 1, "end"}},
                                  {0, 1.43, 0}, 22);
  const auto text = export_lp(inst);
  EXPECT_NE(text.find("x_2_3_dobj"), std::string::npos);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("Bounds"), std::string::npos);
  EXPECT_NE(text.find("Binaries"), std::string::npos);
  EXPECT_NE(text.find("Generals"), std::string::npos);
  const auto lp = parse_lp(text);
  ASSERT_EQ(lp.objective.size(), 3u);
  EXPECT_EQ(lp.objective[1].var, "x_2_3_dobj");
  EXPECT_DOUBLE_EQ(lp.objective[1].coef, 1.43);
  bool found = false;
  for (const auto& r : lp.rows) {
    if (r.name == "gamma") {
      found = true;
      EXPECT_EQ(r.sense, Sense::kLe);
      EXPECT_DOUBLE_EQ(r.rhs, 22.0);
      EXPECT_EQ(r.terms.size(), 3u);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Lp, RoundTripReproducesTheModel) {
  std::mt19937_64 rng(61);
  const auto stats = synth::tiny_stats(2);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = trial % 2 ? synth::random_instance(rng, 12)
                                : synth::random_merged_instance(rng, stats, 12);
    const auto lp = parse_lp(export_lp(inst));
    EXPECT_TRUE(lp.maximize);
    std::map<std::string, double> obj;
    for (const auto& t : lp.objective) obj[t.var] += t.coef;
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      EXPECT_NEAR(obj[inst.var_name(static_cast<int>(e))], inst.coeffs[e], 1e-12);
    }
    const auto rows = inst.rows();
    ASSERT_EQ(lp.rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      EXPECT_EQ(lp.rows[r].name, rows[r].name);
      EXPECT_EQ(lp.rows[r].sense, rows[r].sense);
      EXPECT_NEAR(lp.rows[r].rhs, rows[r].rhs, 1e-12);
      ASSERT_EQ(lp.rows[r].terms.size(), rows[r].terms.size());
      for (std::size_t k = 0; k < rows[r].terms.size(); ++k) {
        EXPECT_EQ(lp.rows[r].terms[k].var, rows[r].terms[k].var);
        EXPECT_NEAR(lp.rows[r].terms[k].coef, rows[r].terms[k].coef, 1e-12);
      }
    }
    EXPECT_EQ(lp.binaries.size(), inst.edges.size());
    EXPECT_EQ(lp.generals.size(), inst.edges.size());
    for (const auto& name : lp.generals) {
      EXPECT_DOUBLE_EQ(lp.bounds.at(name).second, static_cast<double>(inst.gamma));
    }
  }
}

TEST(Lp, ParseErrors) {
  EXPECT_THROW(parse_lp("Maximize\n obj: + 1 x\nSubject To\n"), ParseError);
  EXPECT_THROW(parse_lp("Maximize\n obj: + 1 x\nSubject To\n c: x ?? 3\nEnd\n"), ParseError);
}

TEST(Lp, SolutionRowsHoldOnMergedGraphs) {
  std::mt19937_64 rng(62);
  const auto stats = synth::tiny_stats(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = synth::random_merged_instance(rng, stats, 12);
    if (!oracle::best_subset(inst)) continue;
    const auto sol = solve_exact(inst, {});
    auto assignment = tree_assignment(inst, sol.retained);
    EXPECT_TRUE(rows_satisfied(inst.rows(), assignment));
    double obj = 0;
    for (int e : sol.retained) obj += inst.coeffs[e];
    EXPECT_NEAR(obj, sol.objective, 1e-12);
    // Dropping the start edge breaks the model.
    assignment[inst.var_name(inst.start_edges.front())] = 0;
    for (int e : inst.start_edges) assignment[inst.var_name(e)] = 0;
    EXPECT_FALSE(rows_satisfied(inst.rows(), assignment));
  }
}

}  // namespace
}  // namespace meetsum
