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

#include "meetsum/ilp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "meetsum/error.hpp"

namespace meetsum {

SegmentTf segment_term_frequency(const std::vector<Utterance>& utterances) {
  SegmentTf tf;
  for (const auto& u : utterances) {
    for (const auto& t : u.tokens) {
      if (!t.is_filler) ++tf[t.norm];
    }
  }
  return tf;
}

double edge_coefficient(const GraphEdge& edge, const MergedGraph& graph,
                        const RelationStats& stats, const SegmentTf& segment_tf,
                        double floor_prob) {
  if (graph.is_dummy(edge.gov) || graph.is_dummy(edge.dep)) return 0.0;
  const auto& gov = graph.nodes[edge.gov];
  const auto& dep = graph.nodes[edge.dep];
  double p = 0;
  if (stats.label_probs.count(RelationStats::governor_key(gov.norm, gov.pos))) {
    p = stats.label_prob(gov.norm, gov.pos, edge.label);
  } else {
    p = floor_prob;
  }
  const double info = informativeness(dep.norm, segment_tf, stats);
  const double px = edge.support.empty() ? 0.0 : static_cast<double>(edge.support.back());
  const double n = static_cast<double>(std::max<std::size_t>(graph.n_utterances, 1));
  return p * info * (px / n);
}

namespace {

std::string sanitize(std::string_view label) {
  std::string out;
  for (char c : label) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
  }
  return out.empty() ? "dep" : out;
}

void index_instance(ILPInstance& inst) {
  const std::size_t n = inst.n_nodes;
  inst.incoming.assign(n, {});
  inst.outgoing.assign(n, {});
  inst.start_edges.clear();
  inst.end_edges.clear();
  inst.node_pairs.clear();
  inst.couplings.clear();
  inst.var_names.clear();

  std::map<std::pair<int, int>, std::vector<int>> pairs;
  std::map<std::pair<int, std::string>, std::vector<int>> coupled;
  std::set<std::string> used;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const auto& e = inst.edges[i];
    const int id = static_cast<int>(i);
    if (e.gov < 0 || e.dep < 0 || static_cast<std::size_t>(e.gov) >= n ||
        static_cast<std::size_t>(e.dep) >= n) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.dep == inst.start_id || e.gov == inst.end_id || e.gov == e.dep) {
      throw ValidationError("edge enters start, leaves end or loops");
    }
    inst.outgoing[e.gov].push_back(id);
    inst.incoming[e.dep].push_back(id);
    if (e.gov == inst.start_id) inst.start_edges.push_back(id);
    if (e.dep == inst.end_id) inst.end_edges.push_back(id);
    pairs[{std::min(e.gov, e.dep), std::max(e.gov, e.dep)}].push_back(id);
    if (is_coupled_label(e.label) && e.gov != inst.start_id) coupled[{e.gov, e.label}].push_back(id);

    std::string name = "x_" + std::to_string(e.gov) + "_" + std::to_string(e.dep) + "_" +
                       sanitize(e.label);
    std::string unique = name;
    for (int k = 2; used.count(unique); ++k) unique = name + "_" + std::to_string(k);
    used.insert(unique);
    inst.var_names.push_back(unique);
  }
  for (auto& [key, ids] : pairs) {
    if (ids.size() >= 2) inst.node_pairs.push_back(ids);
  }
  for (auto& [key, ids] : coupled) inst.couplings.push_back({key.first, key.second, ids});
}

}  // namespace

ILPInstance make_instance(std::size_t n_nodes, int start_id, int end_id,
                          std::vector<ILPInstance::Edge> edges, std::vector<double> coeffs,
                          std::size_t gamma) {
  if (edges.size() != coeffs.size()) throw ValidationError("one coefficient per edge expected");
  ILPInstance inst;
  inst.n_nodes = n_nodes;
  inst.start_id = start_id;
  inst.end_id = end_id;
  inst.edges = std::move(edges);
  inst.coeffs = std::move(coeffs);
  inst.gamma = gamma;
  for (double c : inst.coeffs) {
    if (!std::isfinite(c)) throw ValidationError("non-finite objective coefficient");
  }
  index_instance(inst);
  return inst;
}

ILPInstance build_instance(const MergedGraph& graph, const RelationStats& stats,
                           const SegmentTf& segment_tf, const SolverConfig& cfg) {
  if (cfg.gamma < 3) throw ConfigError("gamma must be at least 3");
  std::vector<ILPInstance::Edge> edges;
  std::vector<double> coeffs;
  bool has_start = false, has_end = false;
  for (const auto& e : graph.edges) {
    edges.push_back({e.gov, e.dep, e.label});
    coeffs.push_back(edge_coefficient(e, graph, stats, segment_tf, cfg.floor_prob));
    has_start |= e.gov == graph.start_id;
    has_end |= e.dep == graph.end_id;
  }
  if (!has_start || !has_end) {
    throw ValidationError("merged graph lacks start or end edges");
  }
  return make_instance(graph.nodes.size(), graph.start_id, graph.end_id, std::move(edges),
                       std::move(coeffs), cfg.gamma);
}

std::vector<LinearRow> ILPInstance::rows() const {
  std::vector<LinearRow> rows;
  auto sum_of = [&](const std::vector<int>& ids, double coef) {
    std::vector<LinearTerm> t;
    for (int id : ids) t.push_back({var_name(id), coef});
    return t;
  };
  auto append = [](std::vector<LinearTerm>& a, std::vector<LinearTerm> b) {
    a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  };
  const double g = static_cast<double>(gamma);

  rows.push_back({"start", sum_of(start_edges, 1), Sense::kEq, 1});
  rows.push_back({"end", sum_of(end_edges, 1), Sense::kEq, 1});
  {
    std::vector<int> all(edges.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    rows.push_back({"gamma", sum_of(all, 1), Sense::kLe, g});
  }
  for (std::size_t k = 0; k < node_pairs.size(); ++k) {
    rows.push_back({"pair_" + std::to_string(k), sum_of(node_pairs[k], 1), Sense::kLe, 1});
  }
  for (std::size_t v = 0; v < n_nodes; ++v) {
    if (static_cast<int>(v) == start_id || incoming[v].size() < 2) continue;
    rows.push_back({"head_" + std::to_string(v), sum_of(incoming[v], 1), Sense::kLe, 1});
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int gov = edges[i].gov;
    if (gov == start_id) continue;
    LinearRow r{"keep_" + var_name(static_cast<int>(i)), {{var_name(static_cast<int>(i)), 1}},
                Sense::kLe, 0};
    append(r.terms, sum_of(incoming[gov], -1));
    rows.push_back(std::move(r));
  }
  for (const auto& c : couplings) {
    LinearRow r{"couple_" + std::to_string(c.node) + "_" + c.label, sum_of(c.edges, 1),
                Sense::kEq, 0};
    append(r.terms, sum_of(incoming[c.node], -1));
    rows.push_back(std::move(r));
  }
  // Single-commodity flow: start emits one unit per retained node.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int id = static_cast<int>(i);
    rows.push_back({"cap_" + var_name(id), {{flow_name(id), 1}, {var_name(id), -g}}, Sense::kLe, 0});
  }
  {
    LinearRow r{"flow_start", {}, Sense::kEq, 0};
    for (int id : outgoing[start_id]) r.terms.push_back({flow_name(id), 1});
    for (std::size_t i = 0; i < edges.size(); ++i) r.terms.push_back({var_name(static_cast<int>(i)), -1});
    rows.push_back(std::move(r));
  }
  for (std::size_t v = 0; v < n_nodes; ++v) {
    if (static_cast<int>(v) == start_id) continue;
    if (incoming[v].empty() && outgoing[v].empty()) continue;
    LinearRow r{"flow_" + std::to_string(v), {}, Sense::kEq, 0};
    for (int id : incoming[v]) r.terms.push_back({flow_name(id), 1});
    for (int id : outgoing[v]) r.terms.push_back({flow_name(id), -1});
    for (int id : incoming[v]) r.terms.push_back({var_name(id), -1});
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> check_solution(const ILPInstance& inst, const std::vector<int>& retained) {
  std::vector<char> x(inst.edges.size(), 0);
  for (int id : retained) x.at(static_cast<std::size_t>(id)) = 1;
  std::vector<std::string> bad;
  auto count = [&](const std::vector<int>& ids) {
    int c = 0;
    for (int id : ids) c += x[id];
    return c;
  };
  if (count(inst.start_edges) != 1) bad.push_back("start");
  if (count(inst.end_edges) != 1) bad.push_back("end");
  if (retained.size() > inst.gamma) bad.push_back("gamma");
  for (const auto& p : inst.node_pairs) {
    if (count(p) > 1) {
      bad.push_back("antiparallel");
      break;
    }
  }
  for (std::size_t v = 0; v < inst.n_nodes; ++v) {
    if (static_cast<int>(v) != inst.start_id && count(inst.incoming[v]) > 1) {
      bad.push_back("single_head");
      break;
    }
  }
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const int gov = inst.edges[i].gov;
    if (x[i] && gov != inst.start_id && count(inst.incoming[gov]) == 0) {
      bad.push_back("governor");
      break;
    }
  }
  for (const auto& c : inst.couplings) {
    if (count(c.edges) != count(inst.incoming[c.node])) {
      bad.push_back("coupling");
      break;
    }
  }
  // Every node touched by a retained edge must be reachable from start.
  std::vector<char> seen(inst.n_nodes, 0), touched(inst.n_nodes, 0);
  std::vector<int> stack{inst.start_id};
  seen[inst.start_id] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int id : inst.outgoing[v]) {
      if (x[id] && !seen[inst.edges[id].dep]) {
        seen[inst.edges[id].dep] = 1;
        stack.push_back(inst.edges[id].dep);
      }
    }
  }
  for (int id : retained) {
    touched[inst.edges[id].gov] = 1;
    touched[inst.edges[id].dep] = 1;
  }
  for (std::size_t v = 0; v < inst.n_nodes; ++v) {
    if (touched[v] && !seen[v]) {
      bad.push_back("connectivity");
      break;
    }
  }
  return bad;
}

std::map<std::string, double> tree_assignment(const ILPInstance& inst,
                                              const std::vector<int>& retained) {
  std::vector<char> x(inst.edges.size(), 0);
  for (int id : retained) x[id] = 1;
  std::map<std::string, double> a;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    a[inst.var_name(static_cast<int>(i))] = x[i];
    a[inst.flow_name(static_cast<int>(i))] = 0;
  }
  // Subtree sizes by post-order over retained edges.
  std::function<int(int)> subtree = [&](int v) {
    int size = 1;
    for (int id : inst.outgoing[v]) {
      if (!x[id]) continue;
      const int below = subtree(inst.edges[id].dep);
      a[inst.flow_name(id)] = below;
      size += below;
    }
    return size;
  };
  subtree(inst.start_id);
  return a;
}

bool rows_satisfied(const std::vector<LinearRow>& rows,
                    const std::map<std::string, double>& assignment, double tol) {
  for (const auto& r : rows) {
    double lhs = 0;
    for (const auto& t : r.terms) {
      auto it = assignment.find(t.var);
      if (it != assignment.end()) lhs += t.coef * it->second;
    }
    const bool ok = r.sense == Sense::kLe   ? lhs <= r.rhs + tol
                    : r.sense == Sense::kGe ? lhs >= r.rhs - tol
                                            : std::abs(lhs - r.rhs) <= tol;
    if (!ok) return false;
  }
  return true;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_terms(std::ostringstream& out, const std::vector<LinearTerm>& terms) {
  std::size_t on_line = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (on_line == 6) {
      out << "\n   ";
      on_line = 0;
    }
    const bool neg = std::signbit(t.coef);
    out << ' ' << (neg ? "- " : "+ ") << format_number(std::abs(t.coef)) << ' ' << t.var;
    ++on_line;
  }
}

}  // namespace

std::string export_lp(const ILPInstance& inst) {
  std::ostringstream out;
  out << "\\ Subtree selection over a merged dependency graph\n";
  out << "Maximize\n obj:";
  std::vector<LinearTerm> objective;
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    objective.push_back({inst.var_name(static_cast<int>(i)), inst.coeffs[i]});
  }
  write_terms(out, objective);
  out << "\nSubject To\n";
  for (const auto& r : inst.rows()) {
    out << ' ' << r.name << ':';
    write_terms(out, r.terms);
    out << (r.sense == Sense::kLe ? " <= " : r.sense == Sense::kGe ? " >= " : " = ")
        << format_number(r.rhs) << "\n";
  }
  out << "Bounds\n";
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    out << " 0 <= " << inst.flow_name(static_cast<int>(i)) << " <= " << inst.gamma << "\n";
  }
  out << "Binaries\n";
  for (std::size_t i = 0; i < inst.edges.size(); ++i) out << ' ' << inst.var_name(static_cast<int>(i)) << "\n";
  out << "Generals\n";
  for (std::size_t i = 0; i < inst.edges.size(); ++i) out << ' ' << inst.flow_name(static_cast<int>(i)) << "\n";
  out << "End\n";
  return out.str();
}

namespace {

enum class LpSection { kNone, kObjective, kConstraints, kBounds, kBinaries, kGenerals, kEnd };

std::string lower(std::string_view s) { return to_lower(s); }

struct LpToken {
  std::string text;
  std::size_t line;
};

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

// Parses "[name:] (+|-)? coef? var ... [sense rhs]".
LinearRow parse_expression(const std::vector<LpToken>& toks, bool with_rhs) {
  LinearRow row;
  std::size_t i = 0;
  if (!toks.empty() && toks[0].text.back() == ':') {
    row.name = toks[0].text.substr(0, toks[0].text.size() - 1);
    i = 1;
  }
  double sign = 1;
  double coef = 1;
  bool have_coef = false;
  for (; i < toks.size(); ++i) {
    const auto& t = toks[i].text;
    if (t == "+" || t == "-") {
      sign = t == "-" ? -1 : 1;
    } else if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>") {
      if (!with_rhs || i + 1 >= toks.size() || !is_number(toks[i + 1].text)) {
        throw ParseError("expected right-hand side after '" + t + "'", toks[i].line, 1);
      }
      row.sense = (t == "<=" || t == "=<") ? Sense::kLe : (t == "=") ? Sense::kEq : Sense::kGe;
      row.rhs = std::strtod(toks[i + 1].text.c_str(), nullptr);
      if (i + 2 != toks.size()) throw ParseError("trailing tokens after row", toks[i].line, 1);
      return row;
    } else if (is_number(t)) {
      coef = std::strtod(t.c_str(), nullptr);
      have_coef = true;
    } else {
      row.terms.push_back({t, sign * (have_coef ? coef : 1.0)});
      sign = 1;
      coef = 1;
      have_coef = false;
    }
  }
  if (with_rhs) {
    throw ParseError("row '" + row.name + "' has no comparison",
                     toks.empty() ? 0 : toks.back().line, 1);
  }
  return row;
}

}  // namespace

LinearProgram parse_lp(std::string_view text) {
  LinearProgram lp;
  LpSection section = LpSection::kNone;
  std::vector<LpToken> pending;
  auto flush = [&] {
    if (pending.empty()) return;
    if (section == LpSection::kObjective) {
      lp.objective = parse_expression(pending, false).terms;
    } else if (section == LpSection::kConstraints) {
      lp.rows.push_back(parse_expression(pending, true));
    }
    pending.clear();
  };

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto c = line.find('\\'); c != std::string::npos) line.erase(c);
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty()) continue;
    const std::string head = lower(words[0]);
    const std::string head2 = words.size() > 1 ? head + " " + lower(words[1]) : head;
    LpSection next = LpSection::kNone;
    if (head == "maximize" || head == "maximise" || head == "max") {
      next = LpSection::kObjective;
    } else if (head == "minimize" || head == "minimise" || head == "min") {
      next = LpSection::kObjective;
      lp.maximize = false;
    } else if (head2 == "subject to" || head == "st" || head == "s.t.") {
      next = LpSection::kConstraints;
    } else if (head == "bounds") {
      next = LpSection::kBounds;
    } else if (head == "binaries" || head == "binary") {
      next = LpSection::kBinaries;
    } else if (head == "generals" || head == "general") {
      next = LpSection::kGenerals;
    } else if (head == "end") {
      next = LpSection::kEnd;
    }
    if (next != LpSection::kNone) {
      flush();
      section = next;
      continue;
    }
    switch (section) {
      case LpSection::kObjective:
      case LpSection::kConstraints:
        for (const auto& w : words) {
          if (w.back() == ':' && section == LpSection::kConstraints) flush();
          pending.push_back({w, line_no});
        }
        break;
      case LpSection::kBounds:
        if (words.size() == 5 && is_number(words[0]) && is_number(words[4])) {
          lp.bounds[words[2]] = {std::strtod(words[0].c_str(), nullptr),
                                 std::strtod(words[4].c_str(), nullptr)};
        } else {
          throw ParseError("unsupported bound syntax", line_no, 1);
        }
        break;
      case LpSection::kBinaries:
        lp.binaries.insert(lp.binaries.end(), words.begin(), words.end());
        break;
      case LpSection::kGenerals:
        lp.generals.insert(lp.generals.end(), words.begin(), words.end());
        break;
      default:
        throw ParseError("content outside any LP section", line_no, 1);
    }
  }
  flush();
  if (section != LpSection::kEnd) throw ParseError("missing End", line_no, 1);
  return lp;
}

}  // namespace meetsum
