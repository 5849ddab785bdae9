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

#ifndef GREEDYMRF_THEORY_HPP
#define GREEDYMRF_THEORY_HPP

// Closed-form recovery bounds and measurements of the two model assumptions
// (non-degeneracy gap, correlation decay) on exact joints.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "greedymrf/entropy.hpp"
#include "greedymrf/errors.hpp"
#include "greedymrf/graph.hpp"

namespace gmrf {

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  std::string formula;
  /// Set when the exact value is positive but not representable as a double.
  bool underflow = false;
};

/// h(ε, D) = ε² |X|^{-2(D+1)²} / 64, the accuracy the decay function must
/// reach for the girth condition of the general recovery theorem.
inline BoundReport theorem1_h(double epsilon, std::size_t max_degree, std::size_t alphabet_size) {
  if (!(epsilon > 0.0) || alphabet_size < 2) {
    throw ArgumentError("theorem1_h needs epsilon > 0 and |X| >= 2");
  }
  const double d1 = static_cast<double>(max_degree) + 1.0;
  const double log2_h = 2.0 * std::log2(epsilon) -
                        2.0 * d1 * d1 * std::log2(static_cast<double>(alphabet_size)) - 6.0;
  BoundReport r{"theorem1_h",
                {{"epsilon", epsilon},
                 {"D", static_cast<double>(max_degree)},
                 {"alphabet_size", static_cast<double>(alphabet_size)}},
                std::exp2(log2_h),
                "eps^2 * |X|^(-2(D+1)^2) / 64"};
  r.underflow = r.value == 0.0;
  return r;
}

enum class LogBase { Bits, Nats };

/// Sample count above which every relevant empirical conditional entropy is
/// within ε/8 of the truth with probability 1 - δ/p:
///   n > 2^15 ε^-4 |X|^{4(D+2)} ((D+2) log(2|X|) + 2 log(p/δ)),
/// rounded up. The log base is configurable and defaults to bits.
inline BoundReport lemma5_sample_bound(double epsilon, std::size_t max_degree,
                                       std::size_t alphabet_size, std::size_t p, double delta,
                                       LogBase base = LogBase::Bits) {
  if (!(epsilon > 0.0) || alphabet_size < 2 || p < 1 || !(delta > 0.0 && delta < 1.0)) {
    throw ArgumentError("lemma5_sample_bound needs epsilon > 0, |X| >= 2, p >= 1, 0 < delta < 1");
  }
  auto lg = [base](double x) { return base == LogBase::Bits ? std::log2(x) : std::log(x); };
  const double x = static_cast<double>(alphabet_size);
  const double d2 = static_cast<double>(max_degree) + 2.0;
  const double bracket = d2 * lg(2.0 * x) + 2.0 * lg(static_cast<double>(p) / delta);
  const double n = std::exp2(15.0) * std::pow(epsilon, -4.0) * std::pow(x, 4.0 * d2) * bracket;
  return {"lemma5_sample_bound",
          {{"epsilon", epsilon},
           {"D", static_cast<double>(max_degree)},
           {"alphabet_size", x},
           {"p", static_cast<double>(p)},
           {"delta", delta},
           {"log_base", base == LogBase::Bits ? 2.0 : std::numbers::e}},
          std::ceil(n),
          "2^15 eps^-4 |X|^(4(D+2)) ((D+2) log(2|X|) + 2 log(p/delta))"};
}

struct IsingGuarantee {
  double epsilon = 0.0;      ///< 2^-10 sinh²(2β)
  double girth_bound = 0.0;  ///< (2^15 / ln 2)(D² ln 2 - ln sinh 2β)
};

/// Parameters of the Ising recovery guarantee; requires 0 < β < ln 2 / (2D).
inline IsingGuarantee theorem2_params(double beta, std::size_t max_degree) {
  const double d = static_cast<double>(max_degree);
  if (max_degree == 0 || !(beta > 0.0 && beta < std::numbers::ln2 / (2.0 * d))) {
    throw ArgumentError("theorem2_params requires 0 < beta < |theta_ij| < log 2 / (2D), D >= 1");
  }
  const double s = std::sinh(2.0 * beta);
  return {std::exp2(-10.0) * s * s,
          std::exp2(15.0) / std::numbers::ln2 * (d * d * std::numbers::ln2 - std::log(s))};
}

/// Non-degeneracy constant 2^-7 e^{-6γD} sinh²(2β) for β < |θ| < γ.
inline double lemma6_epsilon(double beta, double gamma, std::size_t max_degree) {
  if (!(beta > 0.0 && beta < gamma)) throw ArgumentError("lemma6_epsilon requires 0 < beta < gamma");
  const double s = std::sinh(2.0 * beta);
  return std::exp2(-7.0) * std::exp(-6.0 * gamma * static_cast<double>(max_degree)) * s * s;
}

/// Smallest entropy gap at vertex i over
///   H(X_i|X_A) - H(X_i|X_A,X_j)          and
///   H(X_i|X_A,X_l) - H(X_i|X_A,X_j,X_l)
/// for A ⊊ N(i), j ∈ N(i)∖A, l ∈ N(j)∖{i}. Any ε below the result satisfies
/// the non-degeneracy assumption at i. +inf for isolated vertices.
inline double measure_nondegeneracy(const DistributionSource& src, const Graph& g, Vertex i) {
  if (g.num_vertices() != src.num_vars()) throw ArgumentError("graph and source sizes differ");
  const auto& nb = g.neighbors(i);
  if (nb.size() > 12) throw CapacityError("degree above 12: subset enumeration too large");
  double best = std::numeric_limits<double>::infinity();
  const std::size_t subsets = std::size_t{1} << nb.size();
  for (std::size_t mask = 0; mask + 1 < subsets; ++mask) {
    std::vector<std::size_t> A;
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (mask >> k & 1U) A.push_back(nb[k]);
    }
    const double h_a = conditional_entropy(src, i, A);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (mask >> k & 1U) continue;
      const Vertex j = nb[k];
      auto Aj = A;
      Aj.push_back(j);
      best = std::min(best, h_a - conditional_entropy(src, i, Aj));
      for (Vertex l : g.neighbors(j)) {
        if (l == i) continue;
        auto Al = A, Ajl = Aj;
        if (std::find(A.begin(), A.end(), l) == A.end()) {
          Al.push_back(l);
          Ajl.push_back(l);
        }
        best = std::min(best, conditional_entropy(src, i, Al) - conditional_entropy(src, i, Ajl));
      }
    }
  }
  return best;
}

inline double measure_nondegeneracy(const JointDistribution& joint, const Graph& g, Vertex i) {
  return measure_nondegeneracy(DistributionSource::exact(joint), g, i);
}

/// Minimum of measure_nondegeneracy over all vertices.
inline double model_nondegeneracy(const DistributionSource& src, const Graph& g) {
  double best = std::numeric_limits<double>::infinity();
  for (Vertex v = 0; v < g.num_vertices(); ++v) best = std::min(best, measure_nondegeneracy(src, g, v));
  return best;
}

struct DecayProfile {
  Vertex node = 0;
  /// d(i, B) -> max |P(x_I | x_B) - P(x_I)| with I = {i} ∪ N¹(i) ∪ N²(i).
  std::map<std::size_t, double> by_distance;
};

/// Measures the correlation-decay profile at vertex i over every nonempty
/// set B outside I with |B| <= max_set_size. Restricting |B| makes each entry
/// a lower bound on the supremum over all sets.
inline DecayProfile measure_decay_profile(const DistributionSource& src, const Graph& g, Vertex i,
                                          std::size_t max_set_size = 2) {
  if (g.num_vertices() != src.num_vars()) throw ArgumentError("graph and source sizes differ");
  const auto dist = bfs_distances(g, i);
  std::vector<std::size_t> local, outside;
  for (Vertex v = 0; v < g.num_vertices(); ++v) (dist[v] <= 2 ? local : outside).push_back(v);

  const unsigned bits = key_bits(src.alphabet_size());
  const std::size_t k = src.alphabet_size();
  if (local.size() + max_set_size > 16 || bits * (local.size() + max_set_size) > 24) {
    throw CapacityError("decay profile: local set plus conditioning set exceeds 16 variables");
  }

  DecayProfile profile;
  profile.node = i;

  // P(x_I) on a dense key space
  const std::size_t local_keys = std::size_t{1} << (bits * local.size());
  std::vector<double> p_local(local_keys, 0.0);
  for (const auto& [key, q] : marginal(src, local).cells) p_local[key] = q;
  auto valid_key = [&](std::uint64_t key, std::size_t fields) {
    for (std::size_t f = 0; f < fields; ++f) {
      if (((key >> (f * bits)) & ((1U << bits) - 1)) >= k) return false;
    }
    return true;
  };

  std::vector<std::size_t> B;
  auto visit = [&](auto&& self, std::size_t start) -> void {
    if (!B.empty()) {
      std::size_t d = kUnreachable;
      for (auto b : B) d = std::min(d, dist[b]);
      if (d != kUnreachable) {
        auto vars = local;
        vars.insert(vars.end(), B.begin(), B.end());
        const auto joint = marginal(src, vars);
        // group cells by x_B (high fields); keys are sorted so groups are contiguous
        const unsigned shift = bits * static_cast<unsigned>(local.size());
        double worst = 0.0;
        std::vector<double> cond(local_keys);
        std::size_t c = 0;
        while (c < joint.cells.size()) {
          const auto xb = joint.cells[c].first >> shift;
          std::fill(cond.begin(), cond.end(), 0.0);
          double pb = 0.0;
          for (; c < joint.cells.size() && (joint.cells[c].first >> shift) == xb; ++c) {
            cond[joint.cells[c].first & (local_keys - 1)] = joint.cells[c].second;
            pb += joint.cells[c].second;
          }
          for (std::size_t xi = 0; xi < local_keys; ++xi) {
            if (!valid_key(xi, local.size())) continue;
            worst = std::max(worst, std::abs(cond[xi] / pb - p_local[xi]));
          }
        }
        auto& slot = profile.by_distance[d];
        slot = std::max(slot, std::min(1.0, worst));
      }
    }
    if (B.size() == max_set_size) return;
    for (std::size_t m = start; m < outside.size(); ++m) {
      B.push_back(outside[m]);
      self(self, m + 1);
      B.pop_back();
    }
  };
  visit(visit, 0);
  return profile;
}

}  // namespace gmrf

#endif  // GREEDYMRF_THEORY_HPP
