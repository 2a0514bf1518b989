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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meetsum/fusion_graph.hpp"
#include "meetsum/relation_stats.hpp"

namespace meetsum {

struct SolverConfig {
  // Cap on retained edges: desired sentence words plus the start and end
  // dummy edges.
  std::size_t gamma = 22;
  double time_limit = 30.0;  // seconds
  double floor_prob = 0.001;

  static std::size_t gamma_for_words(std::size_t words) { return words + 2; }
};

using SegmentTf = std::map<std::string, int>;

// Term frequency over the utterances being fused.
SegmentTf segment_term_frequency(const std::vector<Utterance>& utterances);

// p(l|g) * I(d) * p_x / N, with p_x the latest supporting utterance.
// Dummy edges score 0.
double edge_coefficient(const GraphEdge& edge, const MergedGraph& graph,
                        const RelationStats& stats, const SegmentTf& segment_tf,
                        double floor_prob);

enum class Sense { kLe, kEq, kGe };

struct LinearTerm {
  std::string var;
  double coef = 0;
  bool operator==(const LinearTerm&) const = default;
};

struct LinearRow {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLe;
  double rhs = 0;
  bool operator==(const LinearRow&) const = default;
};

// Labels whose dependents are kept exactly once under a retained governor.
inline bool is_coupled_label(std::string_view label) {
  return label == "aux" || label == "cop" || label == "det";
}

struct ILPInstance {
  struct Edge {
    int gov = 0;
    int dep = 0;
    std::string label;
  };
  struct Coupling {
    int node = 0;
    std::string label;
    std::vector<int> edges;
  };

  std::vector<Edge> edges;    // one binary variable per graph edge
  std::vector<double> coeffs;
  std::size_t n_nodes = 0;
  int start_id = 0;
  int end_id = 1;
  std::size_t gamma = 22;

  std::vector<int> start_edges;
  std::vector<int> end_edges;
  std::vector<std::vector<int>> incoming;  // per node
  std::vector<std::vector<int>> outgoing;  // per node
  std::vector<std::vector<int>> node_pairs;  // edges sharing an unordered node pair (>= 2)
  std::vector<Coupling> couplings;

  // x_<gov>_<dep>_<label>, unique per edge.
  std::vector<std::string> var_names;

  const std::string& var_name(int edge) const {
    return var_names.at(static_cast<std::size_t>(edge));
  }
  std::string flow_name(int edge) const { return "f" + var_name(edge).substr(1); }

  // The full linear model, connectivity included as single-commodity flow.
  std::vector<LinearRow> rows() const;
};

ILPInstance build_instance(const MergedGraph& graph, const RelationStats& stats,
                           const SegmentTf& segment_tf, const SolverConfig& cfg);

// Builds an instance straight from edges and coefficients (used by tests and
// the LP round trip). Coupling groups are derived from the labels.
ILPInstance make_instance(std::size_t n_nodes, int start_id, int end_id,
                          std::vector<ILPInstance::Edge> edges, std::vector<double> coeffs,
                          std::size_t gamma);

struct FusionSolution {
  std::vector<int> retained;  // ascending edge ids
  double objective = 0;
  bool optimal = false;
  std::size_t nodes_explored = 0;
};

// Depth-first branch and bound that grows the subtree from the start node.
// Returns a proven optimum, or the incumbent when time runs out. Throws
// SolverError on infeasibility or on timeout without any incumbent.
FusionSolution solve_exact(const ILPInstance& inst, const SolverConfig& cfg);

// Names of violated constraint families ("start", "end", "gamma",
// "antiparallel", "single_head", "governor", "connectivity", "coupling");
// empty when the edge set is feasible.
std::vector<std::string> check_solution(const ILPInstance& inst, const std::vector<int>& retained);

// Flow values that witness connectivity of a retained tree: the number of
// retained nodes below each edge (0 for dropped edges).
std::map<std::string, double> tree_assignment(const ILPInstance& inst,
                                              const std::vector<int>& retained);

// True if every row holds under the assignment (missing vars read as 0).
bool rows_satisfied(const std::vector<LinearRow>& rows,
                    const std::map<std::string, double>& assignment, double tol = 1e-9);

std::string export_lp(const ILPInstance& inst);

struct LinearProgram {
  bool maximize = true;
  std::vector<LinearTerm> objective;
  std::vector<LinearRow> rows;
  std::map<std::string, std::pair<double, double>> bounds;
  std::vector<std::string> binaries;
  std::vector<std::string> generals;
};

// Reads the LP subset written by export_lp. Throws ParseError.
LinearProgram parse_lp(std::string_view text);

}  // namespace meetsum
