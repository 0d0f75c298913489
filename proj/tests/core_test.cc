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

#include <random>

#include "erefine/core.h"
#include "fixtures.h"

namespace erefine {
namespace {

using testing::ExamplePrior;
using testing::P;

TEST(MatchPairTest, CanonicalOrder) {
  MatchPair a("r7", "r1");
  EXPECT_EQ(a.left(), "r1");
  EXPECT_EQ(a.right(), "r7");
  EXPECT_EQ(a, MatchPair("r1", "r7"));
  EXPECT_THROW(MatchPair("r1", "r1"), Error);
}

TEST(PartitionTest, PairsOfTwoClusters) {
  Partition p = Partition::FromClusters({{"r1", "r7"}, {"r3", "r4"}});
  std::vector<MatchPair> want = {P("r1", "r7"), P("r3", "r4")};
  EXPECT_EQ(PartitionPairs(p), want);
  EXPECT_EQ(p.encoding(), "{r1,r7}{r3,r4}");
}

TEST(PartitionTest, SingletonsHaveNoPairs) {
  EXPECT_TRUE(PartitionPairs(Partition()).empty());
  EXPECT_TRUE(PartitionPairs(Partition::FromClusters({{"a"}, {"b"}})).empty());
  EXPECT_EQ(Partition().encoding(), "{}");
}

TEST(PartitionTest, ThreeClusterHasThreePairs) {
  Partition p = Partition::FromClusters({{"r8", "r3", "r4"}});
  std::vector<MatchPair> want = {P("r3", "r4"), P("r3", "r8"), P("r4", "r8")};
  EXPECT_EQ(PartitionPairs(p), want);
}

TEST(PartitionTest, EdgesCloseTransitively) {
  Partition p = Partition::FromEdges({P("a", "b"), P("b", "c")});
  EXPECT_TRUE(p.Induces(P("a", "c")));
  EXPECT_EQ(p.evidence_edges().size(), 2u);
  EXPECT_EQ(p.encoding(), "{a,b,c}");
}

TEST(PartitionTest, RefinesExamplePrior) {
  ResultSet rs = ExamplePrior();
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    EXPECT_TRUE(rs.partitions()[i].Refines(rs.partitions()[i + 1]));
    EXPECT_FALSE(rs.partitions()[i + 1].Refines(rs.partitions()[i]));
  }
}

TEST(NormalizeAndDedupTest, Rescales) {
  ResultSet rs({Partition::FromClusters({{"a", "b"}}), Partition()}, {0.2, 0.2});
  ResultSet out = NormalizeAndDedup(rs);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out.probs()[0], 0.5);
  EXPECT_DOUBLE_EQ(out.probs()[1], 0.5);
}

TEST(NormalizeAndDedupTest, MergesDuplicates) {
  Partition ab = Partition::FromClusters({{"a", "b"}});
  Partition bc = Partition::FromClusters({{"b", "c"}});
  ResultSet out = NormalizeAndDedup(ResultSet({ab, bc, ab}, {0.3, 0.6, 0.1}));
  ASSERT_EQ(out.size(), 2u);
  std::map<std::string, double> by_enc;
  for (std::size_t i = 0; i < out.size(); ++i) by_enc[out.partitions()[i].encoding()] = out.probs()[i];
  EXPECT_NEAR(by_enc["{a,b}"], 0.4, 1e-12);
  EXPECT_NEAR(by_enc["{b,c}"], 0.6, 1e-12);
}

TEST(NormalizeAndDedupTest, ZeroMassThrows) {
  ResultSet rs({Partition(), Partition::FromClusters({{"a", "b"}}),
                Partition::FromClusters({{"b", "c"}})},
               {0.0, 0.0, 0.0});
  try {
    NormalizeAndDedup(rs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTotalMassVanished);
  }
}

TEST(NormalizeAndDedupTest, MergedEvidenceIsUnion) {
  Partition path1 = Partition::FromEdges({P("a", "b"), P("b", "c")});
  Partition path2 = Partition::FromEdges({P("a", "c"), P("b", "c")});
  ResultSet out = NormalizeAndDedup(ResultSet({path1, path2}, {0.5, 0.5}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.partitions()[0].evidence_edges().size(), 3u);
  EXPECT_DOUBLE_EQ(out.probs()[0], 1.0);
}

TEST(NormalizeAndDedupTest, IdempotentAndNormalized) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    ResultSet once = testing::RandomResultSet(rng, 6, 8);
    EXPECT_TRUE(once.IsNormalized());
    ResultSet twice = NormalizeAndDedup(once);
    ASSERT_EQ(once.size(), twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      EXPECT_EQ(once.partitions()[i].encoding(), twice.partitions()[i].encoding());
      EXPECT_NEAR(once.probs()[i], twice.probs()[i], 1e-15);
    }
  }
}

TEST(ResultSetTest, ArgMaxPrefersLowestIndexOnTie) {
  ResultSet rs({Partition(), Partition::FromClusters({{"a", "b"}})}, {0.5, 0.5});
  EXPECT_EQ(rs.ArgMax(), 0u);
  EXPECT_EQ(ExamplePrior().ArgMax(), 2u);
}

TEST(ResultSetTest, RejectsBadInput) {
  EXPECT_THROW(ResultSet({Partition()}, {0.5, 0.5}), Error);
  EXPECT_THROW(ResultSet({Partition()}, {-0.1}), Error);
}

TEST(MatchingSetTest, UnionOfPairs) {
  auto ms = MatchingSet(ExamplePrior());
  EXPECT_TRUE(std::is_sorted(ms.begin(), ms.end()));
  EXPECT_TRUE(std::binary_search(ms.begin(), ms.end(), P("r6", "r10")));
  EXPECT_FALSE(std::binary_search(ms.begin(), ms.end(), P("r1", "r3")));
}

TEST(DatasetTest, LookupAndValidation) {
  Dataset d = testing::ExampleRecords();
  EXPECT_EQ(d.size(), 11u);
  EXPECT_EQ(*d.At("r4").values[0], "Jane S.");
  EXPECT_EQ(d.Find("zz"), nullptr);
  try {
    d.At("zz");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownRecord);
  }
  EXPECT_THROW(Dataset({"A"}, {Record{"x", {"1"}}, Record{"x", {"2"}}}), Error);
  EXPECT_THROW(Dataset({"A"}, {Record{"x", {"1", "2"}}}), Error);
}

}  // namespace
}  // namespace erefine
