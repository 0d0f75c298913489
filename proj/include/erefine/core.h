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


// Records, candidate partitions and the probabilistic result set.
//
// A Partition lists only its non-singleton clusters; every record id that
// does not appear in a cluster is its own entity. All types are immutable
// once built.

#ifndef EREFINE_CORE_H_
#define EREFINE_CORE_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace erefine {

using RecordId = std::string;
using AttributeValue = std::optional<std::string>;

struct Record {
  RecordId id;
  // Index-aligned with Dataset::attribute_names(). nullopt = no data.
  std::vector<AttributeValue> values;
};

// A fixed universe of records sharing one attribute schema.
class Dataset {
 public:
  Dataset() = default;
  // Throws kInvalidArgument on empty/duplicate ids or ragged rows.
  Dataset(std::vector<std::string> attribute_names, std::vector<Record> records);

  const std::vector<std::string>& attribute_names() const {
    return attribute_names_;
  }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  const Record* Find(std::string_view id) const;
  // Throws kUnknownRecord.
  const Record& At(std::string_view id) const;
  std::optional<std::size_t> IndexOf(std::string_view id) const;

 private:
  std::vector<std::string> attribute_names_;
  std::vector<Record> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

// An unordered pair of distinct record ids, stored with left < right.
class MatchPair {
 public:
  MatchPair(RecordId a, RecordId b);

  const RecordId& left() const { return left_; }
  const RecordId& right() const { return right_; }

  // "left|right"; ordering of encodings equals ordering of pairs.
  std::string Encode() const;

  auto operator<=>(const MatchPair&) const = default;
  bool operator==(const MatchPair&) const = default;

 private:
  RecordId left_;
  RecordId right_;
};

struct MatchPairHash {
  std::size_t operator()(const MatchPair& m) const {
    std::size_t h = std::hash<std::string>{}(m.left());
    return h ^ (std::hash<std::string>{}(m.right()) + 0x9e3779b97f4a7c15ULL +
                (h << 6) + (h >> 2));
  }
};

class Partition {
 public:
  // All records are singletons.
  Partition();

  // Clusters are the connected components of `edges`; the edges are kept as
  // evidence.
  static Partition FromEdges(std::vector<MatchPair> edges);

  // Evidence defaults to a clique per cluster. Clusters of size < 2 are
  // dropped; throws kInvalidArgument if an id appears in two clusters.
  static Partition FromClusters(std::vector<std::vector<RecordId>> clusters);

  // Sorted clusters of sorted ids, size >= 2 each.
  const std::vector<std::vector<RecordId>>& clusters() const {
    return clusters_;
  }
  // Sorted, unique.
  const std::vector<MatchPair>& evidence_edges() const { return edges_; }
  // Sorted induced pairs.
  const std::vector<MatchPair>& pairs() const { return pairs_; }

  bool Induces(const MatchPair& m) const;
  bool SameCluster(std::string_view a, std::string_view b) const;

  // Canonical text form, e.g. "{r1,r7}{r3,r4}"; "{}" for all singletons.
  const std::string& encoding() const { return encoding_; }

  // True when every cluster of *this lies inside one cluster of `coarser`.
  bool Refines(const Partition& coarser) const;

  // Drops `edge` from the evidence and recomputes components.
  Partition WithoutEdge(const MatchPair& edge) const;

  // Same clusters, evidence = union of both evidence sets. Requires identical
  // clusters.
  Partition WithMergedEvidence(const Partition& other) const;

  bool operator==(const Partition& other) const {
    return encoding_ == other.encoding_;
  }

 private:
  void Build();

  std::vector<std::vector<RecordId>> clusters_;
  std::vector<MatchPair> edges_;
  std::vector<MatchPair> pairs_;
  std::unordered_map<RecordId, std::size_t> cluster_of_;
  std::string encoding_;
};

// Pairs induced by `p`: both ids in one cluster.
std::vector<MatchPair> PartitionPairs(const Partition& p);

// Candidate partitions with an index-aligned probability vector.
class ResultSet {
 public:
  ResultSet() = default;
  // Throws kInvalidArgument on length mismatch or negative/non-finite probs.
  ResultSet(std::vector<Partition> partitions, std::vector<double> probs);

  const std::vector<Partition>& partitions() const { return partitions_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return partitions_.size(); }
  bool empty() const { return partitions_.empty(); }

  ResultSet WithProbs(std::vector<double> probs) const;

  bool IsNormalized(double tolerance = 1e-9) const;

  // Index of the most probable partition; ties go to the lower index, which
  // is the canonically smaller one after NormalizeAndDedup.
  std::size_t ArgMax() const;

 private:
  std::vector<Partition> partitions_;
  std::vector<double> probs_;
};

inline constexpr double kDefaultMassEpsilon = 1e-12;

// Merges partitions with identical clusters (summing mass, uniting
// evidence), rescales to sum 1 and sorts by encoding. Throws
// kTotalMassVanished when the total mass is <= mass_epsilon.
ResultSet NormalizeAndDedup(const ResultSet& rs,
                            double mass_epsilon = kDefaultMassEpsilon);

// Union of induced pairs over all partitions, sorted.
std::vector<MatchPair> MatchingSet(const ResultSet& rs);

}  // namespace erefine

#endif  // EREFINE_CORE_H_
