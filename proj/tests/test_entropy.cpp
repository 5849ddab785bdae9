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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "greedymrf/entropy.hpp"
#include "greedymrf/ising.hpp"
#include "oracle.hpp"

using namespace gmrf;

namespace {

DistributionSource counts_source(std::size_t zeros, std::size_t ones) {
  std::vector<Value> v(zeros, 0);
  v.insert(v.end(), ones, 1);
  return DistributionSource::empirical(DiscreteDataset({"x"}, Alphabet::spins(), zeros + ones, v));
}

DistributionSource random_empirical(std::mt19937& rng, std::size_t n, std::size_t p, std::size_t k,
                                    std::vector<std::vector<int>>* rows = nullptr) {
  std::vector<Value> values(n * p);
  // skewed draws so that dependencies and zero cells both occur
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < p; ++j) {
      Value v = static_cast<Value>(rng() % k);
      if (j > 0 && rng() % 3 == 0) v = values[r * p + j - 1];
      values[r * p + j] = v;
    }
  }
  if (rows) {
    for (std::size_t r = 0; r < n; ++r) {
      rows->emplace_back(values.begin() + static_cast<long>(r * p),
                         values.begin() + static_cast<long>((r + 1) * p));
    }
  }
  std::vector<std::string> names, symbols;
  for (std::size_t j = 0; j < p; ++j) names.push_back("v" + std::to_string(j));
  for (std::size_t s = 0; s < k; ++s) symbols.push_back(std::to_string(s));
  return DistributionSource::empirical(DiscreteDataset(names, Alphabet(symbols), n, values));
}

DistributionSource chain3(double theta) {
  return DistributionSource::exact(exact_joint(IsingModel::uniform(Graph(3, {{0, 1}, {1, 2}}), theta)));
}

}  // namespace

TEST(Entropy, WorkedValues) {
  EXPECT_NEAR(entropy(counts_source(5, 5), {0}), 1.0, 1e-12);
  EXPECT_NEAR(entropy(counts_source(4, 0), {0}), 0.0, 1e-12);
  const double expected = -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25);
  EXPECT_NEAR(entropy(counts_source(3, 1), {0}), expected, 1e-12);
  EXPECT_NEAR(entropy(counts_source(3, 1), {0}), 0.811278, 1e-6);
  EXPECT_EQ(entropy(counts_source(3, 1), {}), 0.0);
  EXPECT_THROW(entropy(counts_source(3, 1), {1}), BoundsError);
}

TEST(ConditionalEntropy, CopyAndIndependence) {
  // rows: (0,0),(1,1) twice each -> copy; full 2x2 grid -> independent
  DiscreteDataset copy({"a", "b"}, Alphabet::spins(), 4, {0, 0, 1, 1, 0, 0, 1, 1});
  EXPECT_NEAR(conditional_entropy(DistributionSource::empirical(copy), 1, {0}), 0.0, 1e-12);
  DiscreteDataset indep({"a", "b"}, Alphabet::spins(), 4, {0, 0, 0, 1, 1, 0, 1, 1});
  EXPECT_NEAR(conditional_entropy(DistributionSource::empirical(indep), 0, {1}), 1.0, 1e-12);
  EXPECT_THROW(conditional_entropy(DistributionSource::empirical(indep), 0, {0}), ArgumentError);
}

TEST(ConditionalEntropy, ChainNeighborIsMoreInformative) {
  const auto src = chain3(0.5);
  const auto table = oracle::ising_table(3, {{0, 1}, {1, 2}}, {0.5, 0.5});
  const double via1 = oracle::cond_entropy_bits(table, 0, {1});
  const double via2 = oracle::cond_entropy_bits(table, 0, {2});
  EXPECT_LT(via1, via2);
  EXPECT_NEAR(conditional_entropy(src, 0, {1}), via1, 1e-12);
  EXPECT_NEAR(conditional_entropy(src, 0, {2}), via2, 1e-12);
  EXPECT_LT(conditional_entropy(src, 0, {1}), conditional_entropy(src, 0, {2}));
}

TEST(ConditionalEntropy, MatchesBruteForceOnRandomIsing) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = 3 + static_cast<int>(rng() % 5);
    auto edges = oracle::random_graph(p, 0.5, rng);
    std::vector<double> theta;
    Graph g(static_cast<std::size_t>(p));
    std::map<Edge, double> tmap;
    for (auto [u, v] : edges) {
      double t = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
      if (t == 0.0) t = 0.5;
      theta.push_back(t);
      g.add_edge(u, v);
      tmap[Edge(u, v)] = t;
    }
    const auto table = oracle::ising_table(p, edges, theta);
    const auto src = DistributionSource::exact(exact_joint(IsingModel(g, tmap)));
    const int i = static_cast<int>(rng() % p);
    std::vector<int> given;
    std::vector<std::size_t> given_sz;
    for (int v = 0; v < p; ++v) {
      if (v != i && rng() % 2) {
        given.push_back(v);
        given_sz.push_back(static_cast<std::size_t>(v));
      }
    }
    EXPECT_NEAR(conditional_entropy(src, i, given_sz), oracle::cond_entropy_bits(table, i, given), 1e-12);
    EXPECT_NEAR(entropy(src, given_sz), oracle::entropy_bits(table, given), 1e-12);
  }
}

TEST(ConditionalEntropy, MatchesBruteForceOnRandomEmpirical) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<int>> rows;
    const std::size_t p = 2 + rng() % 5, k = 2 + rng() % 3;
    const auto src = random_empirical(rng, 1 + rng() % 80, p, k, &rows);
    const auto table = oracle::empirical_table(rows);
    const int i = static_cast<int>(rng() % p);
    std::vector<int> given;
    std::vector<std::size_t> given_sz;
    for (std::size_t v = 0; v < p; ++v) {
      if (static_cast<int>(v) != i && rng() % 2) {
        given.push_back(static_cast<int>(v));
        given_sz.push_back(v);
      }
    }
    EXPECT_NEAR(conditional_entropy(src, i, given_sz), oracle::cond_entropy_bits(table, i, given), 1e-12);
  }
}

TEST(ConditionalEntropy, WideAlphabetAndManyVariablesUseSparsePath) {
  // 40 variables of 5 symbols need 120 key bits: exercises the map fallback.
  std::mt19937 rng(21);
  std::vector<std::vector<int>> rows;
  const auto src = random_empirical(rng, 60, 40, 5, &rows);
  const auto table = oracle::empirical_table(rows);
  std::vector<int> given;
  std::vector<std::size_t> given_sz;
  for (int v = 1; v < 40; ++v) {
    given.push_back(v);
    given_sz.push_back(static_cast<std::size_t>(v));
  }
  EXPECT_NEAR(conditional_entropy(src, 0, given_sz), oracle::cond_entropy_bits(table, 0, given), 1e-12);
  EXPECT_NEAR(entropy(src, given_sz), oracle::entropy_bits(table, given), 1e-12);
}

TEST(Entropy, ChainRule) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 2 + rng() % 5;
    const auto src = random_empirical(rng, 5 + rng() % 60, p, 2 + rng() % 3);
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    double sum = 0.0;
    std::vector<std::size_t> prefix;
    for (auto v : order) {
      sum += conditional_entropy(src, v, prefix);
      prefix.push_back(v);
    }
    EXPECT_NEAR(entropy(src, prefix), sum, 1e-10);
  }
}

TEST(Entropy, ConditioningNeverIncreases) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t p = 3 + rng() % 4;
    const auto src = random_empirical(rng, 3 + rng() % 50, p, 2 + rng() % 2);
    const std::size_t i = rng() % p;
    std::vector<std::size_t> A;
    std::size_t j = p;
    for (std::size_t v = 0; v < p; ++v) {
      if (v == i) continue;
      if (j == p && rng() % 3 == 0) {
        j = v;
      } else if (rng() % 2) {
        A.push_back(v);
      }
    }
    if (j == p) continue;
    auto Aj = A;
    Aj.push_back(j);
    EXPECT_LE(conditional_entropy(src, i, Aj), conditional_entropy(src, i, A) + 1e-12);
  }
}

TEST(Entropy, TrueNeighborhoodIsMostInformative) {
  // H(X_i | X_N(i)) <= H(X_i | X_A) for every A with |A| <= 4 on a 3x3 grid.
  Graph g(9);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (c < 2) g.add_edge(r * 3 + c, r * 3 + c + 1);
      if (r < 2) g.add_edge(r * 3 + c, r * 3 + c + 3);
    }
  const auto src = DistributionSource::exact(exact_joint(IsingModel::uniform(g, 0.4)));
  for (std::size_t i = 0; i < 9; ++i) {
    const double best = conditional_entropy(src, i, g.neighbors(i));
    for (std::uint32_t mask = 0; mask < (1U << 9); ++mask) {
      if (mask >> i & 1U || std::popcount(mask) > 4) continue;
      std::vector<std::size_t> A;
      for (std::size_t v = 0; v < 9; ++v)
        if (mask >> v & 1U) A.push_back(v);
      ASSERT_LE(best, conditional_entropy(src, i, A) + 1e-12);
    }
  }
}

TEST(MutualInformation, WorkedValues) {
  DiscreteDataset indep({"a", "b"}, Alphabet::spins(), 4, {0, 0, 0, 1, 1, 0, 1, 1});
  EXPECT_NEAR(mutual_information(DistributionSource::empirical(indep), 0, 1), 0.0, 1e-12);
  DiscreteDataset copy({"a", "b"}, Alphabet::spins(), 2, {0, 0, 1, 1});
  EXPECT_NEAR(mutual_information(DistributionSource::empirical(copy), 0, 1), 1.0, 1e-12);
  EXPECT_THROW(mutual_information(DistributionSource::empirical(copy), 1, 1), ArgumentError);

  // Single edge with θ = 0.5: P(agree) = e^θ / (e^θ + e^-θ).
  const auto edge = DistributionSource::exact(exact_joint(IsingModel::uniform(Graph(2, {{0, 1}}), 0.5)));
  const double agree = std::exp(0.5) / (std::exp(0.5) + std::exp(-0.5));
  EXPECT_NEAR(agree, 0.731059, 1e-6);
  EXPECT_NEAR(mutual_information(edge, 0, 1), 1.0 - oracle::binary_entropy(agree), 1e-12);
  EXPECT_NEAR(mutual_information(edge, 0, 1), mutual_information(edge, 1, 0), 1e-12);
}

TEST(L1Distance, WorkedValues) {
  const std::size_t a[] = {0};
  EXPECT_NEAR(l1_distance(counts_source(3, 1), counts_source(3, 1), a), 0.0, 1e-15);
  EXPECT_NEAR(l1_distance(counts_source(2, 0), counts_source(0, 2), a), 2.0, 1e-15);
  EXPECT_NEAR(l1_distance(counts_source(3, 1), counts_source(1, 1), a), 0.5, 1e-15);
  auto three = DistributionSource::empirical(DiscreteDataset({"x"}, Alphabet({"a", "b", "c"}), 1, {2}));
  EXPECT_THROW(l1_distance(three, counts_source(1, 1), a), ArgumentError);
}

TEST(EntropyBound, WorkedValues) {
  const std::size_t a[] = {0};
  auto same = check_entropy_l1_bound(counts_source(3, 1), counts_source(3, 1), a);
  EXPECT_EQ(same.lhs, 0.0);
  EXPECT_EQ(same.rhs, 0.0);
  EXPECT_TRUE(same.holds);
  auto r = check_entropy_l1_bound(counts_source(3, 1), counts_source(1, 1), a);
  EXPECT_NEAR(r.lhs, 1.0 - 0.811278, 1e-6);
  EXPECT_NEAR(r.rhs, 1.0, 1e-12);
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.holds);
  auto far = check_entropy_l1_bound(counts_source(4, 0), counts_source(0, 4), a);
  EXPECT_FALSE(far.applicable);
}

TEST(Pinsker, WorkedValues) {
  const std::size_t a[] = {0};
  auto same = check_pinsker(counts_source(3, 1), counts_source(3, 1), a);
  EXPECT_EQ(same.kl_bits, 0.0);
  EXPECT_TRUE(same.holds);
  auto disjoint = check_pinsker(counts_source(2, 0), counts_source(0, 2), a);
  EXPECT_TRUE(std::isinf(disjoint.kl_bits));
  EXPECT_TRUE(disjoint.holds);
  auto r = check_pinsker(counts_source(3, 1), counts_source(1, 1), a);
  EXPECT_NEAR(r.kl_bits, 0.75 * std::log2(1.5) + 0.25 * std::log2(0.5), 1e-12);
  EXPECT_NEAR(r.kl_bits, 0.188722, 1e-6);
  EXPECT_NEAR(r.l1 * r.l1 / (2 * std::numbers::ln2), 0.180337, 1e-6);
  EXPECT_TRUE(r.holds);
}

TEST(Bounds, HoldOnRandomPairs) {
  std::mt19937 rng(23);
  int applicable = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t p = 1 + rng() % 3;
    auto P = random_empirical(rng, 4 + rng() % 40, p, 2);
    auto Q = random_empirical(rng, 4 + rng() % 40, p, 2);
    std::vector<std::size_t> A;
    for (std::size_t v = 0; v < p; ++v)
      if (A.empty() || rng() % 2) A.push_back(v);
    auto e = check_entropy_l1_bound(P, Q, A);
    applicable += e.applicable;
    EXPECT_TRUE(e.holds) << "lhs " << e.lhs << " rhs " << e.rhs;
    EXPECT_TRUE(check_pinsker(P, Q, A).holds);
  }
  EXPECT_GT(applicable, 100);
}

TEST(Marginal, SumsToOne) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto src = random_empirical(rng, 1 + rng() % 50, 4, 3);
    std::vector<std::size_t> A{2, 0};
    double total = 0.0;
    for (const auto& [key, q] : marginal(src, A).cells) total += q;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}
