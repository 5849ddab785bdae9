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

#ifndef GREEDYMRF_ENTROPY_HPP
#define GREEDYMRF_ENTROPY_HPP

// Entropies over two interchangeable sources: the empirical distribution of a
// dataset and an exact joint table. All entropies are in bits.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "greedymrf/dataset.hpp"
#include "greedymrf/errors.hpp"
#include "greedymrf/ising.hpp"

namespace gmrf {

using VarSet = std::vector<std::size_t>;

/// Empirical distribution of a dataset. Identical rows are merged into
/// (row, count) pairs once, so marginal queries cost O(distinct rows).
class EmpiricalSource {
 public:
  explicit EmpiricalSource(const DiscreteDataset& ds)
      : p_(ds.num_vars()), k_(ds.alphabet().size()), n_(ds.num_samples()) {
    struct RowHash {
      std::size_t p;
      std::size_t operator()(const Value* r) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::size_t j = 0; j < p; ++j) h = (h ^ r[j]) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
      }
    };
    struct RowEq {
      std::size_t p;
      bool operator()(const Value* a, const Value* b) const noexcept {
        return std::equal(a, a + p, b);
      }
    };
    std::unordered_map<const Value*, std::size_t, RowHash, RowEq> index(
        16, RowHash{p_}, RowEq{p_});
    std::vector<const Value*> order;
    std::vector<std::size_t> counts;
    for (std::size_t r = 0; r < n_; ++r) {
      const Value* row = ds.row(r).data();
      auto [it, inserted] = index.emplace(row, order.size());
      if (inserted) {
        order.push_back(row);
        counts.push_back(1);
      } else {
        ++counts[it->second];
      }
    }
    rows_.reserve(order.size() * p_);
    for (auto* row : order) rows_.insert(rows_.end(), row, row + p_);
    counts_ = std::move(counts);
  }

  std::size_t num_vars() const noexcept { return p_; }
  std::size_t alphabet_size() const noexcept { return k_; }
  std::size_t num_samples() const noexcept { return n_; }
  std::size_t num_distinct_rows() const noexcept { return counts_.size(); }

  /// Calls f(row, weight) for every distinct row; weights are raw counts.
  template <class F>
  void for_each_row(F&& f) const {
    for (std::size_t r = 0; r < counts_.size(); ++r) {
      f(rows_.data() + r * p_, static_cast<double>(counts_[r]));
    }
  }
  double total_weight() const noexcept { return static_cast<double>(n_); }
  std::size_t row_count() const noexcept { return counts_.size(); }

 private:
  std::size_t p_;
  std::size_t k_;
  std::size_t n_;
  std::vector<Value> rows_;
  std::vector<std::size_t> counts_;
};

/// Exact source backed by a dense joint table.
class ExactSource {
 public:
  explicit ExactSource(JointDistribution joint)
      : joint_(std::make_shared<const JointDistribution>(std::move(joint))) {}
  explicit ExactSource(std::shared_ptr<const JointDistribution> joint) : joint_(std::move(joint)) {}

  std::size_t num_vars() const noexcept { return joint_->num_vars(); }
  std::size_t alphabet_size() const noexcept { return joint_->alphabet().size(); }
  const JointDistribution& joint() const noexcept { return *joint_; }

  /// Calls f(row, probability) for every nonzero cell, walking the cells as
  /// an odometer so each step costs O(1) amortized.
  template <class F>
  void for_each_row(F&& f) const {
    const auto p = num_vars();
    const auto k = static_cast<Value>(alphabet_size());
    std::vector<Value> x(p, 0);
    auto probs = joint_->probs();
    for (std::size_t cell = 0; cell < probs.size(); ++cell) {
      if (probs[cell] > 0.0) f(static_cast<const Value*>(x.data()), probs[cell]);
      for (std::size_t v = 0; v < p; ++v) {
        if (++x[v] < k) break;
        x[v] = 0;
      }
    }
  }
  double total_weight() const noexcept { return 1.0; }
  std::size_t row_count() const noexcept { return joint_->num_cells(); }

 private:
  std::shared_ptr<const JointDistribution> joint_;
};

/// Either P^ (empirical) or P (exact).
class DistributionSource {
 public:
  DistributionSource(EmpiricalSource s)
      : impl_(std::make_shared<const Impl>(Impl{std::move(s)})) {}
  DistributionSource(ExactSource s) : impl_(std::make_shared<const Impl>(Impl{std::move(s)})) {}

  static DistributionSource empirical(const DiscreteDataset& ds) { return EmpiricalSource(ds); }
  static DistributionSource exact(JointDistribution j) { return ExactSource(std::move(j)); }

  bool is_exact() const noexcept { return std::holds_alternative<ExactSource>(impl_->v); }

  std::size_t num_vars() const {
    return std::visit([](const auto& s) { return s.num_vars(); }, impl_->v);
  }
  std::size_t alphabet_size() const {
    return std::visit([](const auto& s) { return s.alphabet_size(); }, impl_->v);
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), impl_->v);
  }

 private:
  struct Impl {
    std::variant<EmpiricalSource, ExactSource> v;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Marginal probabilities over a variable subset, keyed by packed assignment.
/// Each variable takes ceil(log2 |X|) bits; the first listed variable is the
/// least significant field.
struct Marginal {
  unsigned bits = 1;
  /// Nonzero cells in ascending key order.
  std::vector<std::pair<std::uint64_t, double>> cells;
};

/// Key field width for an alphabet of the given size.
inline unsigned key_bits(std::size_t alphabet_size) {
  return std::max(1u, static_cast<unsigned>(std::bit_width(alphabet_size - 1)));
}

namespace detail {

inline void check_vars(std::size_t p, std::span<const std::size_t> vars) {
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (vars[k] >= p) {
      throw BoundsError("variable index " + std::to_string(vars[k]) + " out of range (p = " +
                        std::to_string(p) + ")");
    }
    for (std::size_t m = 0; m < k; ++m) {
      if (vars[m] == vars[k]) throw ArgumentError("duplicate variable in set");
    }
  }
}

/// Weights of the nonzero cells of the marginal on `vars` (entry order of
/// `vars` fixes the key layout). Normalized to sum to 1.
template <class Source>
std::vector<std::pair<std::uint64_t, double>> packed_marginal(const Source& src,
                                                              std::span<const std::size_t> vars,
                                                              unsigned bits) {
  const std::size_t width = bits * vars.size();
  std::vector<std::pair<std::uint64_t, double>> out;
  const double total = src.total_weight();
  // dense accumulation only when the table is not much larger than the rows
  if (width <= 20 && (std::size_t{1} << width) <= 4 * src.row_count() + 64) {
    std::vector<double> dense(std::size_t{1} << width, 0.0);
    src.for_each_row([&](const Value* row, double w) {
      std::uint64_t key = 0;
      for (std::size_t k = vars.size(); k-- > 0;) key = (key << bits) | row[vars[k]];
      dense[key] += w;
    });
    for (std::size_t key = 0; key < dense.size(); ++key) {
      if (dense[key] > 0.0) out.emplace_back(key, dense[key] / total);
    }
  } else if (width <= 64) {
    std::unordered_map<std::uint64_t, double> sparse;
    src.for_each_row([&](const Value* row, double w) {
      std::uint64_t key = 0;
      for (std::size_t k = vars.size(); k-- > 0;) key = (key << bits) | row[vars[k]];
      sparse[key] += w;
    });
    out.assign(sparse.begin(), sparse.end());
    for (auto& c : out) c.second /= total;
    std::sort(out.begin(), out.end());
  } else {
    throw CapacityError("packed key wider than 64 bits");
  }
  return out;
}

/// -Σ q log2 q over weights that sum to `total`.
inline double entropy_of_weights(std::span<const double> weights, double total) {
  double h = 0.0;
  for (double w : weights) {
    if (w > 0.0) {
      double q = w / total;
      h -= q * std::log2(q);
    }
  }
  return std::max(0.0, h);
}

/// Joint entropy over `vars`, for any row-visiting source. Wide sets use a
/// vector-keyed map.
template <class Source>
double joint_entropy(const Source& src, std::span<const std::size_t> vars) {
  if (vars.empty()) return 0.0;
  const unsigned bits = key_bits(src.alphabet_size());
  const double total = src.total_weight();
  std::vector<double> weights;
  if (bits * vars.size() <= 64) {
    for (const auto& [key, q] : packed_marginal(src, vars, bits)) weights.push_back(q);
    return entropy_of_weights(weights, 1.0);
  }
  std::map<std::vector<Value>, double> cells;
  std::vector<Value> key(vars.size());
  src.for_each_row([&](const Value* row, double w) {
    for (std::size_t k = 0; k < vars.size(); ++k) key[k] = row[vars[k]];
    cells[key] += w;
  });
  for (const auto& [k, w] : cells) weights.push_back(w);
  return entropy_of_weights(weights, total);
}

/// H(X_i | X_A) from one pass over the contingency table on A ∪ {i}:
/// X_i sits in the lowest key field, so key >> bits is the key on A.
template <class Source>
double conditional_entropy_one_pass(const Source& src, std::size_t i,
                                    std::span<const std::size_t> cond) {
  const unsigned bits = key_bits(src.alphabet_size());
  std::vector<std::size_t> vars;
  vars.reserve(cond.size() + 1);
  vars.push_back(i);
  vars.insert(vars.end(), cond.begin(), cond.end());
  if (bits * vars.size() > 64) return joint_entropy(src, vars) - joint_entropy(src, cond);

  auto joint = packed_marginal(src, vars, bits);
  // cells are key-sorted, so equal parent keys (key >> bits) are contiguous
  double h_joint = 0.0, h_parent = 0.0;
  std::size_t k = 0;
  while (k < joint.size()) {
    std::uint64_t parent = joint[k].first >> bits;
    double mass = 0.0;
    for (; k < joint.size() && (joint[k].first >> bits) == parent; ++k) {
      double q = joint[k].second;
      h_joint -= q * std::log2(q);
      mass += q;
    }
    h_parent -= mass * std::log2(mass);
  }
  return std::max(0.0, h_joint - h_parent);
}

}  // namespace detail

/// Marginal of `src` on `vars` (in the given order).
inline Marginal marginal(const DistributionSource& src, std::span<const std::size_t> vars) {
  detail::check_vars(src.num_vars(), vars);
  Marginal m;
  m.bits = key_bits(src.alphabet_size());
  m.cells = src.visit([&](const auto& s) { return detail::packed_marginal(s, vars, m.bits); });
  return m;
}

/// H(X_A) in bits; H(∅) = 0.
inline double entropy(const DistributionSource& src, std::span<const std::size_t> vars) {
  detail::check_vars(src.num_vars(), vars);
  return src.visit([&](const auto& s) { return detail::joint_entropy(s, vars); });
}

inline double entropy(const DistributionSource& src, std::initializer_list<std::size_t> vars) {
  return entropy(src, std::span<const std::size_t>(vars.begin(), vars.size()));
}

/// H(X_i | X_A) = H(X_{A∪{i}}) - H(X_A).
inline double conditional_entropy(const DistributionSource& src, std::size_t i,
                                  std::span<const std::size_t> cond) {
  detail::check_vars(src.num_vars(), cond);
  if (i >= src.num_vars()) throw BoundsError("variable index out of range");
  if (std::find(cond.begin(), cond.end(), i) != cond.end()) {
    throw ArgumentError("conditional_entropy: target variable is in the conditioning set");
  }
  return src.visit([&](const auto& s) { return detail::conditional_entropy_one_pass(s, i, cond); });
}

inline double conditional_entropy(const DistributionSource& src, std::size_t i,
                                  std::initializer_list<std::size_t> cond) {
  return conditional_entropy(src, i, std::span<const std::size_t>(cond.begin(), cond.size()));
}

/// I(X_i; X_j) = H(X_i) - H(X_i | X_j).
inline double mutual_information(const DistributionSource& src, std::size_t i, std::size_t j) {
  if (i == j) throw ArgumentError("mutual_information needs two distinct variables");
  const std::size_t cond[] = {j};
  const std::size_t single[] = {i};
  double mi = entropy(src, single) - conditional_entropy(src, i, cond);
  return std::max(0.0, mi);
}

namespace detail {

inline void check_comparable(const DistributionSource& P, const DistributionSource& Q,
                             std::span<const std::size_t> vars) {
  if (P.alphabet_size() != Q.alphabet_size()) {
    throw ArgumentError("sources have different alphabet sizes");
  }
  check_vars(P.num_vars(), vars);
  check_vars(Q.num_vars(), vars);
}

/// Merge-walks two key-sorted marginals, calling f(p, q) for every key in the
/// union of their supports.
template <class F>
void zip_marginals(const Marginal& a, const Marginal& b, F&& f) {
  const auto& x = a.cells;
  const auto& y = b.cells;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      f(x[i++].second, 0.0);
    } else if (i == x.size() || y[j].first < x[i].first) {
      f(0.0, y[j++].second);
    } else {
      f(x[i++].second, y[j++].second);
    }
  }
}

}  // namespace detail

/// Σ_x |P(x_A) - Q(x_A)|, in [0, 2].
inline double l1_distance(const DistributionSource& P, const DistributionSource& Q,
                          std::span<const std::size_t> vars) {
  detail::check_comparable(P, Q, vars);
  double d = 0.0;
  detail::zip_marginals(marginal(P, vars), marginal(Q, vars),
                        [&](double p, double q) { d += std::abs(p - q); });
  return d;
}

struct EntropyBoundReport {
  double lhs = 0.0;  ///< |H(P) - H(Q)|
  double rhs = 0.0;  ///< -L1 log2(L1 / |X|^|A|)
  double l1 = 0.0;
  /// False when L1 > 1/2, where the bound is not asserted.
  bool applicable = true;
  bool holds = true;
};

/// Checks |H(P) - H(Q)| <= -‖P-Q‖₁ log(‖P-Q‖₁ / |support|) on the marginal over
/// `vars`, whose outcome space has |X|^|A| points.
inline EntropyBoundReport check_entropy_l1_bound(const DistributionSource& P,
                                                 const DistributionSource& Q,
                                                 std::span<const std::size_t> vars) {
  detail::check_comparable(P, Q, vars);
  EntropyBoundReport r;
  r.l1 = l1_distance(P, Q, vars);
  r.lhs = std::abs(entropy(P, vars) - entropy(Q, vars));
  const double outcomes =
      std::pow(static_cast<double>(P.alphabet_size()), static_cast<double>(vars.size()));
  r.rhs = r.l1 > 0.0 ? -r.l1 * std::log2(r.l1 / outcomes) : 0.0;
  r.applicable = r.l1 <= 0.5;
  r.holds = !r.applicable || r.lhs <= r.rhs + 1e-12;
  return r;
}

struct PinskerReport {
  double kl_bits = 0.0;  ///< D(P‖Q) in bits, +inf when supp P ⊄ supp Q
  double l1 = 0.0;
  bool holds = true;
};

/// Checks D(P‖Q) >= ‖P-Q‖₁² / (2 ln 2) with D in bits.
inline PinskerReport check_pinsker(const DistributionSource& P, const DistributionSource& Q,
                                   std::span<const std::size_t> vars) {
  detail::check_comparable(P, Q, vars);
  PinskerReport r;
  double kl = 0.0, l1 = 0.0;
  detail::zip_marginals(marginal(P, vars), marginal(Q, vars), [&](double p, double q) {
    l1 += std::abs(p - q);
    if (p > 0.0) kl += q > 0.0 ? p * std::log2(p / q) : std::numeric_limits<double>::infinity();
  });
  r.kl_bits = std::isinf(kl) ? kl : std::max(0.0, kl);
  r.l1 = l1;
  r.holds = r.kl_bits + 1e-12 >= l1 * l1 / (2.0 * std::numbers::ln2);
  return r;
}

}  // namespace gmrf

#endif  // GREEDYMRF_ENTROPY_HPP
