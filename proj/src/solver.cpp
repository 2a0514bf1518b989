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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "meetsum/error.hpp"
#include "meetsum/ilp.hpp"

namespace meetsum {

namespace {

enum : char { kUndecided = 0, kIn = 1, kOut = 2 };

struct State {
  std::vector<char> status;
  std::vector<char> in_tree;
  std::size_t count = 0;
  double obj = 0;
  bool has_start = false;
  bool has_end = false;
};

class BranchAndBound {
 public:
  BranchAndBound(const ILPInstance& inst, const SolverConfig& cfg)
      : inst_(inst), deadline_(std::chrono::steady_clock::now() +
                               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(cfg.time_limit))) {}

  FusionSolution run() {
    State s;
    s.status.assign(inst_.edges.size(), kUndecided);
    s.in_tree.assign(inst_.n_nodes, 0);
    s.in_tree[inst_.start_id] = 1;
    search(s);
    if (!have_incumbent_) {
      if (timed_out_) {
        throw SolverError(SolverError::Kind::kTimeout, "time limit reached before any feasible tree");
      }
      throw SolverError(SolverError::Kind::kInfeasible, "no feasible subtree");
    }
    FusionSolution sol;
    sol.retained = best_;
    sol.objective = best_obj_;
    sol.optimal = !timed_out_;
    sol.nodes_explored = explored_;
    return sol;
  }

 private:
  void include(State& s, int e) const {
    const auto& edge = inst_.edges[e];
    s.status[e] = kIn;
    s.in_tree[edge.dep] = 1;
    ++s.count;
    s.obj += inst_.coeffs[e];
    if (edge.gov == inst_.start_id) s.has_start = true;
    if (edge.dep == inst_.end_id) s.has_end = true;
  }

  // Drops undecided edges that would give an in-tree node a second head.
  void normalize(State& s) const {
    for (std::size_t i = 0; i < inst_.edges.size(); ++i) {
      if (s.status[i] == kUndecided && s.in_tree[inst_.edges[i].dep]) s.status[i] = kOut;
    }
  }

  // First unmet coupling group under a retained governor, or -1.
  int pending_coupling(const State& s, std::size_t* n_pending) const {
    int first = -1;
    std::size_t n = 0;
    for (std::size_t c = 0; c < inst_.couplings.size(); ++c) {
      const auto& cp = inst_.couplings[c];
      if (!s.in_tree[cp.node]) continue;
      const bool met = std::any_of(cp.edges.begin(), cp.edges.end(),
                                   [&](int e) { return s.status[e] == kIn; });
      if (met) continue;
      if (first < 0) first = static_cast<int>(c);
      ++n;
    }
    *n_pending = n;
    return first;
  }

  bool end_reachable(const State& s) const {
    if (s.has_end) return true;
    return std::any_of(inst_.end_edges.begin(), inst_.end_edges.end(),
                       [&](int e) { return s.status[e] == kUndecided; });
  }

  // Each missing node can still gain at most its best incoming coefficient,
  // and only gamma - count more edges fit, one of which must reach end.
  double optimistic_gain(const State& s) const {
    long slots = static_cast<long>(inst_.gamma) - static_cast<long>(s.count);
    if (slots <= 0) return 0;
    // Only nodes reachable from the tree over undecided edges can join.
    std::vector<char> reach(s.in_tree.begin(), s.in_tree.end());
    std::vector<int> stack;
    for (std::size_t v = 0; v < inst_.n_nodes; ++v) {
      if (reach[v]) stack.push_back(static_cast<int>(v));
    }
    std::vector<double> best(inst_.n_nodes, 0.0);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : inst_.outgoing[v]) {
        if (s.status[e] != kUndecided) continue;
        const int d = inst_.edges[e].dep;
        best[d] = std::max(best[d], inst_.coeffs[e]);
        if (!reach[d]) {
          reach[d] = 1;
          stack.push_back(d);
        }
      }
    }
    if (!s.has_end && !reach[inst_.end_id]) return -std::numeric_limits<double>::infinity();
    double gain = 0;
    if (!s.has_end) {
      gain += best[inst_.end_id];
      --slots;
    }
    std::vector<double> vals;
    for (std::size_t v = 0; v < inst_.n_nodes; ++v) {
      if (static_cast<int>(v) == inst_.end_id || s.in_tree[v] || best[v] <= 0) continue;
      vals.push_back(best[v]);
    }
    const std::size_t k = std::min<std::size_t>(vals.size(), static_cast<std::size_t>(std::max(0L, slots)));
    std::partial_sort(vals.begin(), vals.begin() + static_cast<long>(k), vals.end(), std::greater<>());
    for (std::size_t i = 0; i < k; ++i) gain += vals[i];
    return gain;
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if ((++explored_ & 1023u) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  void record(const State& s) {
    std::vector<int> retained;
    double obj = 0;
    for (std::size_t i = 0; i < s.status.size(); ++i) {
      if (s.status[i] == kIn) {
        retained.push_back(static_cast<int>(i));
        obj += inst_.coeffs[i];
      }
    }
    // Strict improvement only, so among equal trees the smaller one found
    // first (zero-valued edges excluded) is kept.
    if (!have_incumbent_ || obj > best_obj_) {
      have_incumbent_ = true;
      best_obj_ = obj;
      best_ = std::move(retained);
    }
  }

  void search(State& s) {
    if (out_of_time()) return;

    if (!s.has_start) {
      std::vector<int> order = inst_.start_edges;
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return inst_.coeffs[a] > inst_.coeffs[b]; });
      for (int e : order) {
        State child = s;
        for (int o : inst_.start_edges) child.status[o] = kOut;
        include(child, e);
        search(child);
      }
      return;
    }

    normalize(s);
    std::size_t n_pending = 0;
    const int pending = pending_coupling(s, &n_pending);
    if (s.count + n_pending + (s.has_end ? 0 : 1) > inst_.gamma) return;
    if (!end_reachable(s)) return;
    if (have_incumbent_ && s.obj + optimistic_gain(s) <= best_obj_) return;

    if (pending >= 0) {
      const auto& group = inst_.couplings[pending].edges;
      std::vector<int> options;
      for (int e : group) {
        if (s.status[e] == kUndecided) options.push_back(e);
      }
      std::stable_sort(options.begin(), options.end(),
                       [&](int a, int b) { return inst_.coeffs[a] > inst_.coeffs[b]; });
      for (int e : options) {
        State child = s;
        for (int o : group) {
          if (child.status[o] == kUndecided) child.status[o] = kOut;
        }
        include(child, e);
        search(child);
      }
      return;
    }

    if (s.has_end) record(s);

    int pick = -1;
    for (std::size_t i = 0; i < inst_.edges.size(); ++i) {
      if (s.status[i] != kUndecided || !s.in_tree[inst_.edges[i].gov]) continue;
      if (pick < 0 || inst_.coeffs[i] > inst_.coeffs[pick]) pick = static_cast<int>(i);
    }
    if (pick < 0) return;

    State with = s;
    include(with, pick);
    State without = std::move(s);
    without.status[pick] = kOut;
    if (inst_.coeffs[pick] > 0) {
      search(with);
      search(without);
    } else {
      search(without);
      search(with);
    }
  }

  const ILPInstance& inst_;
  std::chrono::steady_clock::time_point deadline_;
  bool timed_out_ = false;
  bool have_incumbent_ = false;
  double best_obj_ = -std::numeric_limits<double>::infinity();
  std::vector<int> best_;
  std::size_t explored_ = 0;
};

}  // namespace

FusionSolution solve_exact(const ILPInstance& inst, const SolverConfig& cfg) {
  if (cfg.time_limit <= 0) throw ConfigError("time limit must be positive");
  if (inst.start_edges.empty() || inst.end_edges.empty()) {
    throw SolverError(SolverError::Kind::kInfeasible, "instance has no start or no end edge");
  }
  return BranchAndBound(inst, cfg).run();
}

}  // namespace meetsum
