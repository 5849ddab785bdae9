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

#ifndef GREEDYMRF_ISING_HPP
#define GREEDYMRF_ISING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "greedymrf/dataset.hpp"
#include "greedymrf/errors.hpp"
#include "greedymrf/graph.hpp"
#include "greedymrf/random.hpp"

namespace gmrf {

/// Spin value of alphabet index v: 0 -> -1, 1 -> +1.
constexpr int spin_of(Value v) noexcept { return v ? 1 : -1; }
constexpr Value value_of(int spin) noexcept { return spin > 0 ? 1 : 0; }

/// Zero-field Ising model P(x) ∝ exp(Σ θ_ij x_i x_j) over x ∈ {-1,+1}^p.
class IsingModel {
 public:
  IsingModel(Graph graph, std::map<Edge, double> theta)
      : graph_(std::move(graph)), theta_(std::move(theta)) {
    if (theta_.size() != graph_.num_edges()) {
      throw ArgumentError("theta must have exactly one entry per graph edge");
    }
    for (const auto& [e, t] : theta_) {
      if (e.second >= graph_.num_vertices() || !graph_.has_edge(e.first, e.second)) {
        throw ArgumentError("theta given for a non-edge");
      }
      if (!(t != 0.0) || !std::isfinite(t)) throw ArgumentError("edge parameters must be finite and nonzero");
    }
  }

  /// Every edge gets the same parameter.
  static IsingModel uniform(Graph graph, double theta) {
    std::map<Edge, double> t;
    for (const auto& e : graph.edges()) t.emplace(e, theta);
    return IsingModel(std::move(graph), std::move(t));
  }

  const Graph& graph() const noexcept { return graph_; }
  std::size_t num_vars() const noexcept { return graph_.num_vertices(); }
  const std::map<Edge, double>& theta() const noexcept { return theta_; }
  double theta(Vertex u, Vertex v) const { return theta_.at(Edge(u, v)); }

  /// Σ θ_ij x_i x_j for a configuration given as alphabet indices.
  double energy(std::span<const Value> x) const {
    double s = 0.0;
    for (const auto& [e, t] : theta_) s += t * spin_of(x[e.first]) * spin_of(x[e.second]);
    return s;
  }

  /// P(X_v = +1 | x_rest) = σ(2 Σ_{j ∈ N(v)} θ_vj x_j).
  double conditional_plus(Vertex v, std::span<const Value> x) const {
    double field = 0.0;
    for (Vertex j : graph_.neighbors(v)) field += theta(v, j) * spin_of(x[j]);
    return 1.0 / (1.0 + std::exp(-2.0 * field));
  }

 private:
  Graph graph_;
  std::map<Edge, double> theta_;
};

/// Dense probability table over all |X|^p assignments. Cell index is mixed
/// radix with variable 0 as the least significant digit.
class JointDistribution {
 public:
  static constexpr std::size_t kMaxVars = 24;

  JointDistribution(std::size_t p, Alphabet alphabet, std::vector<double> probs)
      : p_(p), alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
    double cells = std::pow(static_cast<double>(alphabet_.size()), static_cast<double>(p_));
    if (p_ == 0 || cells > static_cast<double>(std::size_t{1} << kMaxVars)) {
      throw CapacityError("joint table exceeds the enumeration cap");
    }
    if (probs_.size() != static_cast<std::size_t>(cells)) {
      throw ArgumentError("probability table has the wrong number of cells");
    }
    double total = 0.0;
    for (double q : probs_) {
      if (!(q >= 0.0)) throw ArgumentError("negative probability");
      total += q;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("probabilities do not sum to 1");
  }

  std::size_t num_vars() const noexcept { return p_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_cells() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double prob(std::size_t cell) const { return probs_.at(cell); }

  /// Alphabet indices of a cell.
  std::vector<Value> decode(std::size_t cell) const {
    std::vector<Value> x(p_);
    const auto k = alphabet_.size();
    for (std::size_t v = 0; v < p_; ++v) {
      x[v] = static_cast<Value>(cell % k);
      cell /= k;
    }
    return x;
  }

  std::size_t encode(std::span<const Value> x) const {
    std::size_t cell = 0;
    for (std::size_t v = p_; v-- > 0;) cell = cell * alphabet_.size() + x[v];
    return cell;
  }

 private:
  std::size_t p_;
  Alphabet alphabet_;
  std::vector<double> probs_;
};

/// Exact joint of an Ising model by enumerating all 2^p states.
inline JointDistribution exact_joint(const IsingModel& m) {
  const auto p = m.num_vars();
  if (p > JointDistribution::kMaxVars) {
    throw CapacityError("exact_joint: p = " + std::to_string(p) + " exceeds the cap of " +
                        std::to_string(JointDistribution::kMaxVars));
  }
  const std::size_t cells = std::size_t{1} << p;
  std::vector<double> logw(cells);
  std::vector<std::pair<Edge, double>> edges(m.theta().begin(), m.theta().end());
  double max_logw = -INFINITY;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    double s = 0.0;
    for (const auto& [e, t] : edges) {
      bool agree = ((cell >> e.first) & 1U) == ((cell >> e.second) & 1U);
      s += agree ? t : -t;
    }
    logw[cell] = s;
    max_logw = std::max(max_logw, s);
  }
  double z = 0.0;
  for (auto& w : logw) {
    w = std::exp(w - max_logw);
    z += w;
  }
  for (auto& w : logw) w /= z;
  return JointDistribution(p, Alphabet::spins(), std::move(logw));
}

inline std::vector<std::string> default_names(std::size_t p) {
  std::vector<std::string> names(p);
  for (std::size_t v = 0; v < p; ++v) names[v] = "x" + std::to_string(v);
  return names;
}

/// n i.i.d. draws by inverse CDF over the dense table.
inline DiscreteDataset exact_sample(const JointDistribution& joint, std::size_t n,
                                    std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample count must be positive");
  std::vector<double> cdf(joint.num_cells());
  double acc = 0.0;
  for (std::size_t c = 0; c < cdf.size(); ++c) {
    acc += joint.prob(c);
    cdf[c] = acc;
  }
  Rng rng(seed);
  const auto p = joint.num_vars();
  std::vector<Value> values;
  values.reserve(n * p);
  for (std::size_t r = 0; r < n; ++r) {
    double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t cell = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
    // skip zero-probability cells that share a CDF value with their successor
    while (joint.prob(cell) == 0.0 && cell + 1 < cdf.size()) ++cell;
    auto x = joint.decode(cell);
    values.insert(values.end(), x.begin(), x.end());
  }
  return DiscreteDataset(default_names(p), joint.alphabet(), n, std::move(values));
}

struct GibbsConfig {
  /// Sweeps discarded before the first retained sample; default 1000·p.
  std::optional<std::size_t> burn_in;
  /// Sweeps between retained samples.
  std::size_t thinning = 10;
  std::uint64_t seed = 0;
};

/// Single-site systematic-scan Gibbs sampler.
inline DiscreteDataset gibbs_sample(const IsingModel& m, std::size_t n, const GibbsConfig& cfg) {
  if (n == 0) throw ArgumentError("sample count must be positive");
  if (cfg.thinning == 0) throw ArgumentError("thinning must be at least 1 sweep");
  const auto p = m.num_vars();
  Rng rng(cfg.seed);
  std::vector<Value> x(p);
  for (auto& v : x) v = static_cast<Value>(rng() >> 63);

  // neighbor lists with parameters, to avoid map lookups in the inner loop
  std::vector<std::vector<std::pair<Vertex, double>>> nb(p);
  for (const auto& [e, t] : m.theta()) {
    nb[e.first].emplace_back(e.second, t);
    nb[e.second].emplace_back(e.first, t);
  }
  auto sweep = [&] {
    for (Vertex v = 0; v < p; ++v) {
      double field = 0.0;
      for (const auto& [j, t] : nb[v]) field += t * spin_of(x[j]);
      double plus = 1.0 / (1.0 + std::exp(-2.0 * field));
      x[v] = uniform01(rng) < plus ? 1 : 0;
    }
  };

  const std::size_t burn = cfg.burn_in.value_or(1000 * p);
  for (std::size_t s = 0; s < burn; ++s) sweep();
  std::vector<Value> values;
  values.reserve(n * p);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < cfg.thinning; ++s) sweep();
    values.insert(values.end(), x.begin(), x.end());
  }
  return DiscreteDataset(default_names(p), Alphabet::spins(), n, std::move(values));
}

// Exact inference on tree-structured zero-field models.
//
// For a vertex v of a tree rooted away from its parent, f_v denotes
// P(X_v = +1 | evidence inside the subtree of v) under the subtree's own
// model, whose prior on X_v is uniform. Children combine as
//
//   f_v = Π_c α_c / (Π_c α_c + Π_c β_c),
//   α_c = e^{θ} f_c + e^{-θ} (1 - f_c),   β_c = e^{-θ} f_c + e^{θ} (1 - f_c).

/// Combines child posteriors f_c with their edge parameters into f_parent.
inline double combine_child_posteriors(std::span<const double> child_f,
                                       std::span<const double> child_theta) {
  double log_plus = 0.0, log_minus = 0.0;
  for (std::size_t k = 0; k < child_f.size(); ++k) {
    double ep = std::exp(child_theta[k]), em = std::exp(-child_theta[k]);
    double f = child_f[k];
    log_plus += std::log(ep * f + em * (1.0 - f));
    log_minus += std::log(em * f + ep * (1.0 - f));
  }
  return 1.0 / (1.0 + std::exp(log_minus - log_plus));
}

/// P(X_child = +1 | X_parent = x_parent, evidence in the child's subtree),
/// given f_child for that subtree.
inline double child_given_parent(double child_f, double theta, int x_parent) {
  double a = std::exp(theta * x_parent) * child_f;
  double b = std::exp(-theta * x_parent) * (1.0 - child_f);
  return a / (a + b);
}

/// Subtree posterior f_v for the subtree of v hanging below `parent`
/// (pass parent == v for the whole tree rooted at v). Evidence maps vertices
/// to spins; unobserved leaves contribute f = 1/2.
inline double subtree_posterior(const IsingModel& tree, Vertex v, Vertex parent,
                                const std::map<Vertex, int>& evidence) {
  if (auto it = evidence.find(v); it != evidence.end()) return it->second > 0 ? 1.0 : 0.0;
  std::vector<double> f, t;
  for (Vertex c : tree.graph().neighbors(v)) {
    if (c == parent) continue;
    f.push_back(subtree_posterior(tree, c, v, evidence));
    t.push_back(tree.theta(v, c));
  }
  if (f.empty()) return 0.5;
  return combine_child_posteriors(f, t);
}

/// P(X_root = +1 | evidence) on a tree-structured model.
inline double tree_root_posterior(const IsingModel& tree, Vertex root,
                                  const std::map<Vertex, int>& evidence) {
  if (girth(tree.graph())) throw ArgumentError("tree inference needs an acyclic graph");
  return subtree_posterior(tree, root, root, evidence);
}

}  // namespace gmrf

#endif  // GREEDYMRF_ISING_HPP
