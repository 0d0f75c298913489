// Copyright 2026 The Authors.
//
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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "erefine/entropy.h"
#include "erefine/simgen.h"
#include "fixtures.h"

namespace erefine {
namespace {

using testing::P;

// Textbook two-row edit distance.
std::size_t RefEditDistance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string RandomWord(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 8), ch(0, 3);
  std::string s(len(rng), 'a');
  for (char& c : s) c = static_cast<char>('a' + ch(rng));
  return s;
}

Dataset SingleAttribute(std::vector<std::pair<std::string, std::optional<std::string>>> rows) {
  std::vector<Record> records;
  for (auto& [id, v] : rows) records.push_back(Record{id, {v}});
  return Dataset({"A"}, std::move(records));
}

TEST(SimilarityTest, Levenshtein) {
  EXPECT_NEAR(LevenshteinSimilarity("kitten", "sitting"), 1.0 - 3.0 / 7.0, 1e-12);
  EXPECT_NEAR(LevenshteinSimilarity("kitten", "sitting"), 0.5714, 1e-4);
  EXPECT_DOUBLE_EQ(LevenshteinSimilarity("", ""), 1.0);
  EXPECT_DOUBLE_EQ(LevenshteinSimilarity("abc", ""), 0.0);
}

TEST(SimilarityTest, LevenshteinMatchesReference) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::string a = RandomWord(rng), b = RandomWord(rng);
    std::size_t len = std::max(a.size(), b.size());
    double want = len == 0 ? 1.0 : 1.0 - static_cast<double>(RefEditDistance(a, b)) / len;
    ASSERT_NEAR(LevenshteinSimilarity(a, b), want, 1e-12) << a << " / " << b;
  }
}

TEST(SimilarityTest, Jaccard) {
  EXPECT_DOUBLE_EQ(JaccardSimilarity("TechCorp LLC", "TechCorp"), 0.5);
  EXPECT_DOUBLE_EQ(JaccardSimilarity("New York, NY", "new york ny"), 1.0);
  EXPECT_DOUBLE_EQ(JaccardSimilarity("", ""), 1.0);
}

TEST(SimilarityTest, Jaro) {
  EXPECT_DOUBLE_EQ(JaroSimilarity("abc", "abc"), 1.0);
  EXPECT_NEAR(JaroSimilarity("MARTHA", "MARHTA"), 0.944444, 1e-6);
  EXPECT_NEAR(JaroSimilarity("DIXON", "DICKSONX"), 0.766667, 1e-6);
  EXPECT_DOUBLE_EQ(JaroSimilarity("abc", "xyz"), 0.0);
}

TEST(SimilarityTest, SymmetricAndBounded) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::string a = RandomWord(rng), b = RandomWord(rng);
    for (auto kind : {SimilarityKind::kLevenshtein, SimilarityKind::kJaro,
                      SimilarityKind::kJaccard}) {
      auto ab = Similarity(a, b, kind, MissingValuePolicy::kSkipAttribute);
      auto ba = Similarity(b, a, kind, MissingValuePolicy::kSkipAttribute);
      ASSERT_TRUE(ab && ba);
      ASSERT_DOUBLE_EQ(*ab, *ba) << a << " / " << b;
      ASSERT_GE(*ab, 0.0);
      ASSERT_LE(*ab, 1.0);
      ASSERT_DOUBLE_EQ(*Similarity(a, a, kind, MissingValuePolicy::kSkipAttribute), 1.0);
    }
  }
}

TEST(SimilarityTest, MissingValues) {
  EXPECT_FALSE(Similarity(std::nullopt, "x", SimilarityKind::kLevenshtein,
                          MissingValuePolicy::kSkipAttribute));
  EXPECT_EQ(Similarity(std::nullopt, "x", SimilarityKind::kLevenshtein,
                       MissingValuePolicy::kTreatAsMismatch),
            0.0);
}

TEST(GeneratePartitionTest, ThresholdExtremes) {
  Dataset d = SingleAttribute({{"x", "abc"}, {"y", "def"}, {"z", "ghi"}});
  SimConfig cfg;
  EXPECT_TRUE(GeneratePartition(d, 1.0, cfg).pairs().empty());
  Partition all = GeneratePartition(d, 0.0, cfg);
  EXPECT_EQ(all.clusters().size(), 1u);
  EXPECT_EQ(all.pairs().size(), 3u);
}

TEST(GeneratePartitionTest, TransitiveClosureKeepsEvidence) {
  Dataset d = SingleAttribute({{"x", "aa"}, {"y", "ab"}, {"z", "bb"}});
  Partition p = GeneratePartition(d, 0.5, SimConfig());
  std::vector<MatchPair> edges = {P("x", "y"), P("y", "z")};
  EXPECT_EQ(p.evidence_edges(), edges);
  EXPECT_EQ(p.encoding(), "{x,y,z}");
  EXPECT_TRUE(p.Induces(P("x", "z")));
}

TEST(GeneratePartitionTest, AllAttributesMustPass) {
  Dataset d({"A", "B"}, {Record{"x", {"same", "abcd"}}, Record{"y", {"same", "wxyz"}}});
  EXPECT_TRUE(GeneratePartition(d, 0.5, SimConfig()).pairs().empty());
}

TEST(GeneratePartitionTest, SkippedAttributes) {
  Dataset d({"A", "B"}, {Record{"x", {"same", std::nullopt}}, Record{"y", {"same", "v"}},
                         Record{"z", {std::nullopt, std::nullopt}}});
  SimConfig cfg;
  Partition p = GeneratePartition(d, 0.9, cfg);
  EXPECT_TRUE(p.Induces(P("x", "y")));
  EXPECT_FALSE(p.Induces(P("x", "z")));
  cfg.missing = MissingValuePolicy::kTreatAsMismatch;
  EXPECT_TRUE(GeneratePartition(d, 0.9, cfg).pairs().empty());
}

TEST(GeneratePartitionTest, Errors) {
  Dataset empty_schema({}, {Record{"x", {}}});
  try {
    GeneratePartition(empty_schema, 0.5, SimConfig());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyAttributeSchema);
  }
  EXPECT_THROW(GeneratePartition(testing::ExampleRecords(), 1.5, SimConfig()), Error);
}

TEST(GeneratePartitionTest, InputOrderIndependent) {
  Dataset d = testing::ExampleRecords();
  std::vector<Record> reversed(d.records().rbegin(), d.records().rend());
  Dataset r(d.attribute_names(), reversed);
  for (double tau : DefaultThresholds()) {
    EXPECT_EQ(GeneratePartition(d, tau, SimConfig()).encoding(),
              GeneratePartition(r, tau, SimConfig()).encoding());
  }
}

TEST(GeneratePartitionTest, HigherThresholdRefines) {
  Dataset d = testing::ExampleRecords();
  for (auto kind : {SimilarityKind::kLevenshtein, SimilarityKind::kJaro,
                    SimilarityKind::kJaccard}) {
    SimConfig cfg;
    cfg.default_kind = kind;
    auto taus = DefaultThresholds();
    for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
      EXPECT_TRUE(GeneratePartition(d, taus[i + 1], cfg)
                      .Refines(GeneratePartition(d, taus[i], cfg)));
    }
  }
}

TEST(InitDistributionTest, Shapes) {
  auto u = InitDistribution(4, InitMode::kUniform, 0);
  for (double x : u) EXPECT_DOUBLE_EQ(x, 0.25);
  auto one = InitDistribution(1, InitMode::kGaussian, 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one[0], 1.0);
  auto g = InitDistribution(5, InitMode::kGaussian, 0);
  EXPECT_GT(g[2], g[1]);
  EXPECT_EQ(g[1], g[3]);
  EXPECT_GT(g[1], g[0]);
  EXPECT_EQ(g[0], g[4]);
  double sum = 0.0;
  for (double x : g) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(InitDistributionTest, SampledIsSeededAndPositive) {
  auto a = InitDistribution(10, InitMode::kGaussianSampled, 3);
  auto b = InitDistribution(10, InitMode::kGaussianSampled, 3);
  EXPECT_EQ(a, b);
  for (double x : a) EXPECT_GT(x, 0.0);
}

TEST(SweepResultSetTest, IdenticalPartitionsMerge) {
  Dataset d = SingleAttribute({{"x", "abc"}, {"y", "xyz"}});
  SimConfig cfg;
  cfg.thresholds = {0.8, 0.9};
  ResultSet rs = SweepResultSet(d, cfg, InitMode::kGaussian, 0);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_DOUBLE_EQ(rs.probs()[0], 1.0);
}

TEST(SweepResultSetTest, UniformOverTenDistinct) {
  // Group g is a pair at similarity 1 - (2g+1)/40; cross-group pairs score
  // below 0.5, so each default threshold keeps a different number of pairs.
  std::vector<std::pair<std::string, std::optional<std::string>>> rows;
  for (int g = 0; g < 10; ++g) {
    const char c = static_cast<char>('a' + g);
    const int m = 2 * g + 1;
    rows.push_back({"a" + std::to_string(g), std::string(40, c)});
    rows.push_back({"b" + std::to_string(g), std::string(40 - m, c) + std::string(m, 'z')});
  }
  ResultSet rs = SweepResultSet(SingleAttribute(rows), SimConfig(), InitMode::kUniform, 0);
  ASSERT_EQ(rs.size(), 10u);
  for (double p : rs.probs()) EXPECT_NEAR(p, 0.1, 1e-12);
  EXPECT_NEAR(ResultEntropy(rs), std::log2(10.0), 1e-12);
  EXPECT_NEAR(ResultEntropy(rs), 3.3219, 1e-4);
}

TEST(SweepResultSetTest, ExampleRecordsFormChain) {
  ResultSet rs = SweepResultSet(testing::ExampleRecords(), SimConfig(), InitMode::kGaussian, 0);
  EXPECT_TRUE(rs.IsNormalized());
  EXPECT_GT(rs.size(), 1u);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const Partition& a = rs.partitions()[i];
      const Partition& b = rs.partitions()[j];
      EXPECT_TRUE(a.Refines(b) || b.Refines(a));
    }
  }
}

}  // namespace
}  // namespace erefine
