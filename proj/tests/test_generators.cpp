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

#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "greedymrf/generators.hpp"

using namespace gmrf;

namespace {

IsingModel make(const std::string& family, const std::string& weights) {
  return build({parse_family(family), parse_weights(weights)});
}

}  // namespace

TEST(Build, Grid) {
  auto m = make("grid:3", "const:0.5");
  EXPECT_EQ(m.num_vars(), 9U);
  EXPECT_EQ(m.graph().num_edges(), 12U);
  EXPECT_EQ(girth(m.graph()), 4U);
  EXPECT_TRUE(m.graph().has_edge(0, 1));
  EXPECT_TRUE(m.graph().has_edge(0, 3));
  EXPECT_FALSE(m.graph().has_edge(2, 3));  // row-major, no wraparound
  for (const auto& [e, t] : m.theta()) EXPECT_EQ(t, 0.5);
  for (std::size_t k = 2; k <= 6; ++k) {
    EXPECT_EQ(girth(build_graph(GridFamily{k})), 4U);
  }
}

TEST(Build, ChainCycleTree) {
  auto chain = make("chain:3", "const:0.5");
  EXPECT_EQ(chain.graph().edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(girth(chain.graph()).has_value());
  EXPECT_EQ(girth(build_graph(CycleFamily{7})), 7U);
  auto tree = build_graph(DaryTreeFamily{2, 3});
  EXPECT_EQ(tree.num_vertices(), 15U);
  EXPECT_EQ(tree.num_edges(), 14U);
  EXPECT_FALSE(girth(tree).has_value());
  EXPECT_TRUE(tree.has_edge(1, 3) && tree.has_edge(1, 4) && tree.has_edge(6, 14));
  auto star = build_graph(parse_family("star:5"));
  EXPECT_EQ(star.num_vertices(), 6U);
  EXPECT_EQ(star.degree(0), 5U);
}

TEST(Build, CounterExample) {
  auto g = build_graph(CounterExampleFamily{8});
  EXPECT_EQ(g.num_vertices(), 10U);
  EXPECT_EQ(g.num_edges(), 16U);
  EXPECT_EQ(g.degree(0), 8U);
  EXPECT_EQ(g.degree(9), 8U);
  for (Vertex v = 1; v <= 8; ++v) EXPECT_EQ(g.degree(v), 2U);
  EXPECT_FALSE(g.has_edge(0, 9));
  for (std::size_t d = 2; d <= 6; ++d) EXPECT_EQ(girth(build_graph(CounterExampleFamily{d})), 4U);
}

TEST(Build, ErdosRenyiIsConnectedAndDeterministic) {
  auto a = build_graph(parse_family("er:12:0.3:5"));
  auto b = build_graph(parse_family("er:12:0.3:5"));
  EXPECT_EQ(a.edges(), b.edges());
  for (auto d : bfs_distances(a, 0)) EXPECT_NE(d, kUnreachable);
}

TEST(Build, RandomTree) {
  auto t = build_graph(parse_family("randtree:10:3:3"));
  EXPECT_EQ(t.num_edges(), 9U);
  EXPECT_FALSE(girth(t).has_value());
  EXPECT_LE(t.max_degree(), 3U);
  EXPECT_EQ(t.edges(), build_graph(parse_family("randtree:10:3:3")).edges());
}

TEST(Weights, UniformRangeRespectsTreeDecayPrecondition) {
  const std::size_t D = 3;
  const double hi = std::numbers::ln2 / (2.0 * D);
  auto m = build({DaryTreeFamily{D, 3}, UniformWeights{0.0, hi, 17}});
  for (const auto& [e, t] : m.theta()) {
    EXPECT_GT(t, 0.0);
    EXPECT_LT(std::abs(t), hi);
  }
  auto again = build({DaryTreeFamily{D, 3}, UniformWeights{0.0, hi, 17}});
  EXPECT_EQ(m.theta(), again.theta());
}

TEST(Weights, RandomSign) {
  auto m = make("grid:4", "sign:0.4:2");
  int pos = 0;
  for (const auto& [e, t] : m.theta()) {
    EXPECT_EQ(std::abs(t), 0.4);
    pos += t > 0;
  }
  EXPECT_GT(pos, 0);
  EXPECT_LT(pos, 24);
}

TEST(Parse, RejectsBadSpecs) {
  EXPECT_THROW(parse_family("grid"), ArgumentError);
  EXPECT_THROW(parse_family("grid:x"), ArgumentError);
  EXPECT_THROW(parse_family("hexagon:3"), ArgumentError);
  EXPECT_THROW(build_graph(parse_family("grid:1")), ArgumentError);
  EXPECT_THROW(build_graph(parse_family("counterexample:0")), ArgumentError);
  EXPECT_THROW(build_graph(parse_family("er:5:1.5:1")), ArgumentError);
  EXPECT_THROW(build_graph(parse_family("tree:2:0")), ArgumentError);
  EXPECT_THROW(parse_weights("const"), ArgumentError);
  EXPECT_THROW(make("chain:3", "const:0"), ArgumentError);
  EXPECT_THROW(make("chain:3", "uniform:1:0:3"), ArgumentError);
}

TEST(Parse, RoundTripsThroughToString) {
  for (const char* f : {"grid:3", "chain:7", "cycle:5", "tree:3:2", "counterexample:4", "er:9:0.25:3",
                        "randtree:8:1", "randtree:8:1:3"}) {
    EXPECT_EQ(to_string(parse_family(f)), f);
  }
  EXPECT_EQ(to_string(parse_family("star:4")), "tree:4:1");
  for (const char* w : {"const:0.5", "uniform:0.1:0.2:7", "sign:0.9:3"}) {
    EXPECT_EQ(to_string(parse_weights(w)), w);
  }
}
