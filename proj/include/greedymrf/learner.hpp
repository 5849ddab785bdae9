// Copyright 2026 The greedymrf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREEDYMRF_LEARNER_HPP
#define GREEDYMRF_LEARNER_HPP

// Greedy conditional-entropy neighborhood selection.
//
// For each vertex i the neighborhood estimate starts empty. Each round picks
// the candidate k minimizing H(X_i | X_N, X_k) and keeps it only if that value
// is below H(X_i | X_N) - ε/2; otherwise the round ends the search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "greedymrf/entropy.hpp"
#include "greedymrf/errors.hpp"
#include "greedymrf/graph.hpp"
#include "greedymrf/parallel.hpp"

namespace gmrf {

enum class Symmetrization { And, Or };

/// Argmin tie rule. Only one rule exists: the lowest vertex index wins.
enum class TieBreak { LowestIndex };

struct LearnerConfig {
  double epsilon = 0.1;
  /// Optional cap on |N̂(i)|; a capped stop is reported in the trace.
  std::optional<std::size_t> max_neighborhood;
  TieBreak tie_break = TieBreak::LowestIndex;
  Symmetrization symmetrization = Symmetrization::And;
  /// Apply prune_neighborhood to every greedy estimate before assembly.
  bool prune = false;

  void validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw ArgumentError("epsilon must be a positive finite number");
    }
    if (max_neighborhood && *max_neighborhood < 1) {
      throw ArgumentError("max_neighborhood must be at least 1");
    }
  }
};

struct Pick {
  Vertex vertex = 0;
  double entropy_before = 0.0;  ///< H(X_i | X_N) before the pick
  double entropy_after = 0.0;   ///< H(X_i | X_N, X_vertex)
};

enum class StopReason { Threshold, Cap, Exhausted };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Threshold: return "threshold";
    case StopReason::Cap: return "cap";
    case StopReason::Exhausted: return "exhausted";
  }
  return "?";
}

inline const char* to_string(Symmetrization s) { return s == Symmetrization::And ? "and" : "or"; }

struct NeighborhoodTrace {
  Vertex node = 0;
  std::vector<Pick> picks;
  StopReason stop_reason = StopReason::Threshold;
  /// Best rejected candidate and its conditional entropy (Threshold stops only).
  std::optional<Pick> rejected;

  std::vector<Vertex> neighborhood() const {
    std::vector<Vertex> out;
    for (const auto& p : picks) out.push_back(p.vertex);
    return out;
  }
};

struct LearnResult {
  std::vector<NeighborhoodTrace> traces;
  /// Final per-vertex estimates (after pruning when enabled), sorted.
  std::vector<std::vector<Vertex>> neighborhoods;
  Graph graph;
  /// Ordered (i, j) with j ∈ N̂(i) but i ∉ N̂(j).
  std::vector<std::pair<Vertex, Vertex>> asymmetric_pairs;
};

inline NeighborhoodTrace greedy_neighborhood(const DistributionSource& src, Vertex i,
                                             const LearnerConfig& cfg) {
  cfg.validate();
  const auto p = src.num_vars();
  if (p < 2) throw ArgumentError("structure learning needs at least 2 variables");
  if (i >= p) throw BoundsError("vertex out of range");

  NeighborhoodTrace trace;
  trace.node = i;
  std::vector<std::size_t> cond;
  std::vector<bool> taken(p, false);
  taken[i] = true;
  double current = conditional_entropy(src, i, cond);

  while (true) {
    if (cfg.max_neighborhood && trace.picks.size() >= *cfg.max_neighborhood) {
      trace.stop_reason = StopReason::Cap;
      break;
    }
    std::optional<Vertex> best;
    double best_h = 0.0;
    cond.push_back(0);
    for (Vertex k = 0; k < p; ++k) {
      if (taken[k]) continue;
      cond.back() = k;
      double h = conditional_entropy(src, i, cond);
      if (!best || h < best_h) {  // strict: ties keep the lower index
        best = k;
        best_h = h;
      }
    }
    cond.pop_back();
    if (!best) {
      trace.stop_reason = StopReason::Exhausted;
      break;
    }
    if (best_h < current - cfg.epsilon / 2.0) {
      trace.picks.push_back({*best, current, best_h});
      cond.push_back(*best);
      taken[*best] = true;
      current = best_h;
    } else {
      trace.stop_reason = StopReason::Threshold;
      trace.rejected = Pick{*best, current, best_h};
      break;
    }
  }
  return trace;
}

/// Repeatedly removes the member whose removal raises H(X_i | X_S) the least,
/// as long as that increase is at most ε/2. Survivors keep their input order.
inline std::vector<Vertex> prune_neighborhood(const DistributionSource& src, Vertex i,
                                              std::vector<Vertex> candidates,
                                              const LearnerConfig& cfg) {
  cfg.validate();
  for (Vertex v : candidates) {
    if (v == i) throw ArgumentError("candidate set contains the target vertex");
  }
  while (!candidates.empty()) {
    const double full = conditional_entropy(src, i, candidates);
    std::size_t weakest = 0;
    double weakest_gain = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      std::vector<std::size_t> without;
      for (std::size_t m = 0; m < candidates.size(); ++m) {
        if (m != k) without.push_back(candidates[m]);
      }
      double gain = conditional_entropy(src, i, without) - full;
      if (k == 0 || gain < weakest_gain ||
          (gain == weakest_gain && candidates[k] < candidates[weakest])) {
        weakest = k;
        weakest_gain = gain;
      }
    }
    if (weakest_gain > cfg.epsilon / 2.0) break;
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(weakest));
  }
  return candidates;
}

/// Builds the graph from per-vertex neighborhoods under the given rule.
inline Graph symmetrize(const std::vector<std::vector<Vertex>>& neighborhoods,
                        Symmetrization rule,
                        std::vector<std::pair<Vertex, Vertex>>* asymmetric = nullptr) {
  const auto p = neighborhoods.size();
  std::vector<std::vector<bool>> has(p, std::vector<bool>(p, false));
  for (Vertex i = 0; i < p; ++i) {
    for (Vertex j : neighborhoods[i]) has[i].at(j) = true;
  }
  Graph g(p);
  for (Vertex i = 0; i < p; ++i) {
    for (Vertex j = 0; j < p; ++j) {
      if (i == j) continue;
      if (has[i][j] && !has[j][i] && asymmetric) asymmetric->emplace_back(i, j);
      if (i < j) {
        bool keep = rule == Symmetrization::And ? (has[i][j] && has[j][i]) : (has[i][j] || has[j][i]);
        if (keep) g.add_edge(i, j);
      }
    }
  }
  return g;
}

/// Runs the greedy search from every vertex (in parallel over `threads`
/// workers, 0 = all cores) and assembles the graph.
inline LearnResult learn_structure(const DistributionSource& src, const LearnerConfig& cfg,
                                   std::size_t threads = 1) {
  cfg.validate();
  const auto p = src.num_vars();
  if (p < 2) throw ArgumentError("structure learning needs at least 2 variables");
  LearnResult result;
  result.traces.resize(p);
  result.neighborhoods.resize(p);
  parallel_for(p, threads, [&](std::size_t i) {
    result.traces[i] = greedy_neighborhood(src, i, cfg);
    auto nb = result.traces[i].neighborhood();
    if (cfg.prune) nb = prune_neighborhood(src, i, std::move(nb), cfg);
    std::sort(nb.begin(), nb.end());
    result.neighborhoods[i] = std::move(nb);
  });
  result.graph = symmetrize(result.neighborhoods, cfg.symmetrization, &result.asymmetric_pairs);
  return result;
}

/// Maximum-weight spanning tree under pairwise mutual information (Kruskal).
/// Equal weights are taken in lexicographic edge order.
inline Graph chow_liu(const DistributionSource& src) {
  const auto p = src.num_vars();
  if (p < 2) throw ArgumentError("chow_liu needs at least 2 variables");
  std::vector<std::tuple<double, Vertex, Vertex>> weighted;
  for (Vertex u = 0; u < p; ++u) {
    for (Vertex v = u + 1; v < p; ++v) weighted.emplace_back(mutual_information(src, u, v), u, v);
  }
  std::stable_sort(weighted.begin(), weighted.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<Vertex> parent(p);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Graph tree(p);
  for (const auto& [w, u, v] : weighted) {
    auto ru = find(u), rv = find(v);
    if (ru == rv) continue;
    parent[ru] = rv;
    tree.add_edge(u, v);
    if (tree.num_edges() + 1 == p) break;
  }
  return tree;
}

}  // namespace gmrf

#endif  // GREEDYMRF_LEARNER_HPP
