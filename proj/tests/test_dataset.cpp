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

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "greedymrf/dataset.hpp"

using namespace gmrf;

namespace {

DiscreteDataset parse(const std::string& text, const IngestOptions& opts = {}) {
  std::istringstream in(text);
  return read_csv(in, opts);
}

}  // namespace

TEST(Ingest, ReadsHeaderAndInfersSortedAlphabet) {
  auto ds = parse("u,v,w\na,b,a\nb,b,a\n");
  EXPECT_EQ(ds.num_samples(), 2U);
  EXPECT_EQ(ds.num_vars(), 3U);
  EXPECT_EQ(ds.alphabet().size(), 2U);
  EXPECT_EQ(ds.alphabet().symbols(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.at(0, 1), 1);
  EXPECT_EQ(ds.at(1, 0), 1);
  EXPECT_EQ(ds.names()[2], "w");
}

TEST(Ingest, RaggedRowNamesTheLine) {
  try {
    parse("a,b,c\n0,1,0\n1,0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3U);
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
  }
}

TEST(Ingest, EmptyBodyAndEmptyFile) {
  EXPECT_THROW(parse("a,b\n"), EmptyDatasetError);
  EXPECT_THROW(parse(""), EmptyDatasetError);
}

TEST(Ingest, ExplicitAlphabetRejectsForeignToken) {
  IngestOptions opts;
  opts.alphabet = std::vector<std::string>{"0", "1"};
  EXPECT_THROW(parse("a,b\n0,1\n2,0\n", opts), DomainError);
  auto ok = parse("a,b\n1,1\n", opts);
  EXPECT_EQ(ok.alphabet().symbols()[0], "0");
  EXPECT_EQ(ok.at(0, 0), 1);
}

TEST(Ingest, VotingTokensMapToBinary) {
  IngestOptions opts;
  opts.mappings = {{"Yea", "+1"}, {"Nay", "-1"}, {"Absent", "-1"}};
  auto ds = parse("s1,s2,s3\nYea,Nay,Absent\nNay,Yea,Yea\n", opts);
  EXPECT_EQ(ds.alphabet().size(), 2U);
  auto plus = *ds.alphabet().index_of("+1");
  auto minus = *ds.alphabet().index_of("-1");
  EXPECT_EQ(ds.at(0, 0), plus);
  EXPECT_EQ(ds.at(0, 1), minus);
  EXPECT_EQ(ds.at(0, 2), minus);
  EXPECT_EQ(ds.at(1, 2), plus);
}

TEST(Ingest, MappingFileAndRuleParsing) {
  std::istringstream in("# votes\nYea = 1\n\nNay=0\n");
  auto rules = read_mappings(in);
  ASSERT_EQ(rules.size(), 2U);
  EXPECT_EQ(rules[0].from, "Yea");
  EXPECT_EQ(rules[0].to, "1");
  EXPECT_EQ(parse_mapping("a=b").to, "b");
  EXPECT_THROW(parse_mapping("ab"), ArgumentError);
  std::istringstream bad("x\n");
  EXPECT_THROW(read_mappings(bad), ParseError);
}

TEST(Ingest, WriteBackRoundTrips) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 30, p = 1 + rng() % 6, k = 2 + rng() % 4;
    std::vector<std::string> symbols;
    for (std::size_t s = 0; s < k; ++s) symbols.push_back("s" + std::to_string(s));
    std::vector<std::string> names;
    for (std::size_t v = 0; v < p; ++v) names.push_back("v" + std::to_string(v));
    std::vector<Value> values(n * p);
    for (auto& x : values) x = static_cast<Value>(rng() % k);
    DiscreteDataset ds(names, Alphabet(symbols), n, values);
    std::ostringstream out;
    write_csv(out, ds);
    IngestOptions opts;
    opts.alphabet = symbols;
    EXPECT_EQ(parse(out.str(), opts), ds);
  }
}

TEST(Dataset, Invariants) {
  EXPECT_THROW(DiscreteDataset({"a", "a"}, Alphabet::spins(), 1, {0, 1}), ArgumentError);
  EXPECT_THROW(DiscreteDataset({"a"}, Alphabet::spins(), 1, {2}), DomainError);
  EXPECT_THROW(DiscreteDataset({"a"}, Alphabet::spins(), 0, {}), EmptyDatasetError);
  EXPECT_THROW(Alphabet({"x"}), ArgumentError);
  EXPECT_THROW(Alphabet({"x", "x"}), ArgumentError);
  EXPECT_THROW(Assignment({1, 0}, {0, 0}), ArgumentError);
  auto a = Alphabet({"q", "r", "s"});
  for (Value v = 0; v < 3; ++v) EXPECT_EQ(*a.index_of(a.symbol(v)), v);
}

TEST(Participation, VacuousAndBoundaryThresholds) {
  auto raw = parse("a,b,c\nY,Y,Y\nY,A,Y\nN,Y,N\n");
  EXPECT_EQ(filter_participation(raw, "A", 0.0).num_vars(), 3U);
  auto strict = filter_participation(raw, "A", 1.0);
  EXPECT_EQ(strict.names(), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(strict.num_samples(), 3U);
  EXPECT_THROW(filter_participation(raw, "Z", 0.5), DomainError);
  EXPECT_THROW(filter_participation(raw, "A", 1.5), ArgumentError);
}

TEST(Participation, TenRowFixture) {
  // Non-missing fractions per column: 0.9, 0.7, 0.8, 0.5.
  std::string text = "c0,c1,c2,c3\n";
  const int missing_rows[4] = {1, 3, 2, 5};
  for (int r = 0; r < 10; ++r) {
    for (int c = 0; c < 4; ++c) {
      text += (r < missing_rows[c] ? "M" : "V");
      text += (c < 3 ? "," : "\n");
    }
  }
  auto kept = filter_participation(parse(text), "M", 0.75);
  EXPECT_EQ(kept.names(), (std::vector<std::string>{"c0", "c2"}));
}

TEST(Participation, AllFilteredIsEmpty) {
  auto raw = parse("a,b\nM,M\nM,x\n");
  EXPECT_THROW(filter_participation(raw, "M", 0.9), EmptyDatasetError);
}

TEST(EmpiricalProb, WorkedExamples) {
  DiscreteDataset one({"x"}, Alphabet::spins(), 2, {0, 1});
  EXPECT_DOUBLE_EQ(empirical_prob(one, Assignment()), 1.0);
  EXPECT_DOUBLE_EQ(empirical_prob(one, Assignment({0}, {0})), 0.5);
  DiscreteDataset four({"a", "b"}, Alphabet::spins(), 4, {0, 0, 0, 1, 1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(empirical_prob(four, Assignment({0, 1}, {1, 1})), 0.5);
  EXPECT_THROW(empirical_prob(four, Assignment({2}, {0})), BoundsError);
}

TEST(EmpiricalProb, SumsToOneAndShrinksUnderExtension) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 40, p = 2 + rng() % 3, k = 2 + rng() % 2;
    std::vector<Value> values(n * p);
    for (auto& x : values) x = static_cast<Value>(rng() % k);
    std::vector<std::string> names, symbols;
    for (std::size_t v = 0; v < p; ++v) names.push_back("v" + std::to_string(v));
    for (std::size_t s = 0; s < k; ++s) symbols.push_back(std::to_string(s));
    DiscreteDataset ds(names, Alphabet(symbols), n, values);
    // all assignments over vars {0, 1}: counts sum to n exactly
    std::size_t total = 0;
    for (Value a = 0; a < k; ++a) {
      for (Value b = 0; b < k; ++b) {
        const auto c = empirical_count(ds, Assignment({0, 1}, {a, b}));
        total += c;
        EXPECT_LE(c, empirical_count(ds, Assignment({0}, {a})));
      }
    }
    EXPECT_EQ(total, n);
  }
}

TEST(Columns, SelectAndRemap) {
  auto ds = parse("a,b,c\nx,y,x\ny,y,x\n");
  std::vector<std::size_t> cols{2, 0};
  auto sel = select_columns(ds, cols);
  EXPECT_EQ(sel.names(), (std::vector<std::string>{"c", "a"}));
  EXPECT_EQ(sel.at(1, 1), ds.at(1, 0));
  IngestOptions opts;
  opts.mappings = {{"x", "1"}, {"y", "0"}};
  auto re = remap(ds, opts);
  EXPECT_EQ(re.alphabet().symbols(), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(re.alphabet().symbol(re.at(0, 0)), "1");
}

TEST(Columns, ConstantInputStillBinary) {
  auto ds = parse("a,b\n1,1\n1,1\n");
  EXPECT_EQ(ds.alphabet().size(), 2U);
  EXPECT_EQ(ds.alphabet().symbol(ds.at(0, 0)), "1");
}
