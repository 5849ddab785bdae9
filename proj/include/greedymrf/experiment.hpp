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

#ifndef GREEDYMRF_EXPERIMENT_HPP
#define GREEDYMRF_EXPERIMENT_HPP

// Monte Carlo success-probability curves: sample, learn, compare to the
// generating graph, aggregate per (n, ε).

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "greedymrf/entropy.hpp"
#include "greedymrf/errors.hpp"
#include "greedymrf/generators.hpp"
#include "greedymrf/ising.hpp"
#include "greedymrf/learner.hpp"
#include "greedymrf/parallel.hpp"

namespace gmrf {

enum class Sampler { Exact, Gibbs };

struct ExperimentSpec {
  ModelSpec model;
  std::vector<std::size_t> n_values;  ///< strictly ascending
  std::size_t trials = 50;
  std::vector<double> epsilons{0.1};
  double success_target = 0.95;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::Exact;
  GibbsConfig gibbs;  ///< seed field is ignored; trial seeds are derived
  Symmetrization symmetrization = Symmetrization::And;
  bool prune = false;
  std::optional<std::size_t> max_neighborhood;
  /// Record wall-clock learning time. Off keeps outputs byte-reproducible.
  bool timing = false;
  std::size_t threads = 1;

  void validate() const {
    if (n_values.empty()) throw ArgumentError("experiment needs at least one n");
    for (std::size_t k = 0; k < n_values.size(); ++k) {
      if (n_values[k] == 0) throw ArgumentError("sample counts must be positive");
      if (k > 0 && n_values[k] <= n_values[k - 1]) {
        throw ArgumentError("n values must be strictly ascending");
      }
    }
    if (trials < 1) throw ArgumentError("trials must be at least 1");
    if (epsilons.empty()) throw ArgumentError("experiment needs at least one epsilon");
    for (double e : epsilons) {
      if (!(e > 0.0)) throw ArgumentError("epsilon values must be positive");
    }
    if (!(success_target > 0.0 && success_target <= 1.0)) {
      throw ArgumentError("success target must lie in (0, 1]");
    }
  }
};

struct ExperimentRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_runtime_s = 0.0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  ///< n-major, ε in spec order

  /// Smallest n whose success rate reaches the target for this ε.
  std::optional<std::size_t> minimal_n(double epsilon, double target) const {
    for (const auto& r : rows) {
      if (r.epsilon == epsilon && r.success_rate >= target) return r.n;
    }
    return std::nullopt;
  }

  /// Row with the highest success rate at n; the earliest listed ε wins ties.
  const ExperimentRow* best_for_n(std::size_t n) const {
    const ExperimentRow* best = nullptr;
    for (const auto& r : rows) {
      if (r.n == n && (!best || r.success_rate > best->success_rate)) best = &r;
    }
    return best;
  }
};

/// Edge-set comparison against the generating graph.
struct RecoveryScore {
  bool exact = false;
  double precision = 1.0;  ///< 1 when nothing was predicted
  double recall = 1.0;     ///< 1 when the truth is empty
};

inline RecoveryScore score_recovery(const Graph& truth, const Graph& learned) {
  const auto t = truth.edges();
  const auto l = learned.edges();
  std::vector<Edge> common;
  std::set_intersection(t.begin(), t.end(), l.begin(), l.end(), std::back_inserter(common));
  RecoveryScore s;
  s.exact = t == l;
  if (!l.empty()) s.precision = static_cast<double>(common.size()) / static_cast<double>(l.size());
  if (!t.empty()) s.recall = static_cast<double>(common.size()) / static_cast<double>(t.size());
  return s;
}

/// Seed of trial k: base ⊕ k. Every n and ε reuses it.
inline std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) {
  return base ^ static_cast<std::uint64_t>(trial);
}

/// Runs the full (n, ε, trial) grid. Each completed n is handed to
/// `on_rows` before the next one starts so callers can flush partial output.
inline ExperimentResult run_experiment(
    const ExperimentSpec& spec,
    const std::function<void(const std::vector<ExperimentRow>&)>& on_rows = {}) {
  spec.validate();
  const IsingModel model = build(spec.model);
  std::optional<JointDistribution> joint;
  if (spec.sampler == Sampler::Exact) joint = exact_joint(model);  // throws CapacityError

  const std::size_t n_eps = spec.epsilons.size();
  ExperimentResult result;
  for (std::size_t n : spec.n_values) {
    struct Outcome {
      RecoveryScore score;
      double seconds = 0.0;
    };
    std::vector<Outcome> outcomes(spec.trials * n_eps);
    parallel_for(spec.trials, spec.threads, [&](std::size_t trial) {
      const auto seed = trial_seed(spec.seed, trial);
      DiscreteDataset data = [&] {
        if (joint) return exact_sample(*joint, n, seed);
        GibbsConfig g = spec.gibbs;
        g.seed = seed;
        return gibbs_sample(model, n, g);
      }();
      const auto src = DistributionSource::empirical(data);
      for (std::size_t e = 0; e < n_eps; ++e) {
        LearnerConfig cfg;
        cfg.epsilon = spec.epsilons[e];
        cfg.symmetrization = spec.symmetrization;
        cfg.prune = spec.prune;
        cfg.max_neighborhood = spec.max_neighborhood;
        const auto start = std::chrono::steady_clock::now();
        const auto learned = learn_structure(src, cfg);
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        outcomes[trial * n_eps + e] = {score_recovery(model.graph(), learned.graph),
                                       spec.timing ? took.count() : 0.0};
      }
    });
    std::vector<ExperimentRow> batch;
    for (std::size_t e = 0; e < n_eps; ++e) {
      ExperimentRow row;
      row.n = n;
      row.epsilon = spec.epsilons[e];
      row.trials = spec.trials;
      double seconds = 0.0, precision = 0.0, recall = 0.0;
      for (std::size_t t = 0; t < spec.trials; ++t) {
        const auto& o = outcomes[t * n_eps + e];
        row.successes += o.score.exact ? 1 : 0;
        seconds += o.seconds;
        precision += o.score.precision;
        recall += o.score.recall;
      }
      const auto trials = static_cast<double>(spec.trials);
      row.success_rate = static_cast<double>(row.successes) / trials;
      row.mean_runtime_s = seconds / trials;
      row.mean_precision = precision / trials;
      row.mean_recall = recall / trials;
      batch.push_back(row);
    }
    result.rows.insert(result.rows.end(), batch.begin(), batch.end());
    if (on_rows) on_rows(batch);
  }
  return result;
}

/// True when no n has a success rate more than `slack` below that of a
/// smaller n (per ε).
inline bool success_trend_ok(const ExperimentResult& r, double slack = 0.1) {
  for (const auto& a : r.rows) {
    for (const auto& b : r.rows) {
      if (a.epsilon == b.epsilon && a.n < b.n && b.success_rate < a.success_rate - slack) {
        return false;
      }
    }
  }
  return true;
}

/// Shortest round-trip decimal form.
inline std::string format_number(double x) { return detail::format_real(x); }

inline constexpr const char* kResultsHeader = "n,epsilon,trials,successes,success_rate,mean_runtime_s";

inline void write_results_rows(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  for (const auto& r : rows) {
    out << r.n << ',' << format_number(r.epsilon) << ',' << r.trials << ',' << r.successes << ','
        << format_number(r.success_rate) << ',' << format_number(r.mean_runtime_s) << '\n';
  }
}

/// Minimal n per ε, best ε per n and per-cell partial-recovery metrics.
/// Runtime is left out so the document is reproducible.
inline nlohmann::ordered_json summary_json(const ExperimentSpec& spec, const ExperimentResult& r) {
  using J = nlohmann::ordered_json;
  J s;
  s["model"] = to_string(spec.model.family);
  s["weights"] = to_string(spec.model.weights);
  s["sampler"] = spec.sampler == Sampler::Exact ? "exact" : "gibbs";
  s["seed"] = spec.seed;
  s["trials"] = spec.trials;
  s["n_values"] = spec.n_values;
  s["epsilons"] = spec.epsilons;
  s["symmetrization"] = to_string(spec.symmetrization);
  s["prune"] = spec.prune;
  s["success_target"] = spec.success_target;
  J min_n = J::array();
  for (double e : spec.epsilons) {
    auto n = r.minimal_n(e, spec.success_target);
    min_n.push_back({{"epsilon", e}, {"minimal_n", n ? J(*n) : J(nullptr)}});
  }
  s["minimal_n"] = std::move(min_n);
  J best = J::array();
  for (std::size_t n : spec.n_values) {
    if (const auto* row = r.best_for_n(n)) {
      best.push_back({{"n", n}, {"epsilon", row->epsilon}, {"success_rate", row->success_rate}});
    }
  }
  s["best_epsilon"] = std::move(best);
  J cells = J::array();
  for (const auto& row : r.rows) {
    cells.push_back({{"n", row.n},
                     {"epsilon", row.epsilon},
                     {"successes", row.successes},
                     {"success_rate", row.success_rate},
                     {"mean_precision", row.mean_precision},
                     {"mean_recall", row.mean_recall}});
  }
  s["cells"] = std::move(cells);
  return s;
}

}  // namespace gmrf

#endif  // GREEDYMRF_EXPERIMENT_HPP
