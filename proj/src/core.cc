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


#include "erefine/core.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>
#include <utility>

#include "erefine/error.h"
#include "erefine/union_find.h"

namespace erefine {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kTotalMassVanished: return "TotalMassVanished";
    case ErrorCode::kEmptyAttributeSchema: return "EmptyAttributeSchema";
    case ErrorCode::kUnknownRecord: return "UnknownRecord";
    case ErrorCode::kPoolTooLarge: return "PoolTooLarge";
    case ErrorCode::kUnparseableAnswer: return "UnparseableAnswer";
    case ErrorCode::kTransportError: return "TransportError";
    case ErrorCode::kAuthError: return "AuthError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDanglingId: return "DanglingId";
    case ErrorCode::kEmptyTruth: return "EmptyTruth";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

Dataset::Dataset(std::vector<std::string> attribute_names,
                 std::vector<Record> records)
    : attribute_names_(std::move(attribute_names)),
      records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& r = records_[i];
    if (r.id.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record " + std::to_string(i) + " has an empty id");
    }
    if (r.values.size() != attribute_names_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record " + r.id + " has " + std::to_string(r.values.size()) +
                      " values, schema has " +
                      std::to_string(attribute_names_.size()));
    }
    if (!index_.emplace(r.id, i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate record id " + r.id);
    }
  }
}

const Record* Dataset::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

const Record& Dataset::At(std::string_view id) const {
  const Record* r = Find(id);
  if (r == nullptr) {
    throw Error(ErrorCode::kUnknownRecord, std::string(id));
  }
  return *r;
}

std::optional<std::size_t> Dataset::IndexOf(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

MatchPair::MatchPair(RecordId a, RecordId b) {
  if (a == b) {
    throw Error(ErrorCode::kInvalidArgument, "self pair on " + a);
  }
  if (b < a) std::swap(a, b);
  left_ = std::move(a);
  right_ = std::move(b);
}

std::string MatchPair::Encode() const { return left_ + "|" + right_; }

Partition::Partition() { Build(); }

Partition Partition::FromEdges(std::vector<MatchPair> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<RecordId> ids;
  ids.reserve(edges.size() * 2);
  for (const MatchPair& e : edges) {
    ids.push_back(e.left());
    ids.push_back(e.right());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&ids](const RecordId& id) {
    return static_cast<std::size_t>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  UnionFind uf(ids.size());
  for (const MatchPair& e : edges) uf.Union(index_of(e.left()), index_of(e.right()));

  std::map<std::size_t, std::vector<RecordId>> by_root;
  for (std::size_t i = 0; i < ids.size(); ++i) by_root[uf.Find(i)].push_back(ids[i]);

  Partition p;
  p.clusters_.clear();
  for (auto& [root, members] : by_root) p.clusters_.push_back(std::move(members));
  p.edges_ = std::move(edges);
  p.Build();
  return p;
}

Partition Partition::FromClusters(std::vector<std::vector<RecordId>> clusters) {
  std::vector<MatchPair> edges;
  std::unordered_set<RecordId> seen;
  for (auto& c : clusters) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (const RecordId& id : c) {
      if (!seen.insert(id).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "record " + id + " appears in two clusters");
      }
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) edges.emplace_back(c[i], c[j]);
    }
  }
  return FromEdges(std::move(edges));
}

void Partition::Build() {
  for (auto& c : clusters_) std::sort(c.begin(), c.end());
  std::erase_if(clusters_, [](const auto& c) { return c.size() < 2; });
  std::sort(clusters_.begin(), clusters_.end());

  cluster_of_.clear();
  pairs_.clear();
  encoding_.clear();
  for (std::size_t ci = 0; ci < clusters_.size(); ++ci) {
    const auto& c = clusters_[ci];
    encoding_ += '{';
    for (std::size_t i = 0; i < c.size(); ++i) {
      cluster_of_.emplace(c[i], ci);
      if (i > 0) encoding_ += ',';
      encoding_ += c[i];
      for (std::size_t j = i + 1; j < c.size(); ++j) pairs_.emplace_back(c[i], c[j]);
    }
    encoding_ += '}';
  }
  if (encoding_.empty()) encoding_ = "{}";
  std::sort(pairs_.begin(), pairs_.end());
}

bool Partition::SameCluster(std::string_view a, std::string_view b) const {
  auto ia = cluster_of_.find(std::string(a));
  if (ia == cluster_of_.end()) return false;
  auto ib = cluster_of_.find(std::string(b));
  return ib != cluster_of_.end() && ia->second == ib->second;
}

bool Partition::Induces(const MatchPair& m) const {
  return SameCluster(m.left(), m.right());
}

bool Partition::Refines(const Partition& coarser) const {
  for (const auto& c : clusters_) {
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (!coarser.SameCluster(c[0], c[i])) return false;
    }
  }
  return true;
}

Partition Partition::WithoutEdge(const MatchPair& edge) const {
  std::vector<MatchPair> kept;
  kept.reserve(edges_.size());
  for (const MatchPair& e : edges_) {
    if (e != edge) kept.push_back(e);
  }
  return FromEdges(std::move(kept));
}

Partition Partition::WithMergedEvidence(const Partition& other) const {
  if (encoding_ != other.encoding_) {
    throw Error(ErrorCode::kInvalidArgument,
                "evidence merge across different partitions");
  }
  std::vector<MatchPair> all = edges_;
  all.insert(all.end(), other.edges_.begin(), other.edges_.end());
  return FromEdges(std::move(all));
}

std::vector<MatchPair> PartitionPairs(const Partition& p) { return p.pairs(); }

ResultSet::ResultSet(std::vector<Partition> partitions, std::vector<double> probs)
    : partitions_(std::move(partitions)), probs_(std::move(probs)) {
  if (partitions_.size() != probs_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "partition/probability length mismatch");
  }
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "probabilities must be finite and non-negative");
    }
  }
}

ResultSet ResultSet::WithProbs(std::vector<double> probs) const {
  return ResultSet(partitions_, std::move(probs));
}

bool ResultSet::IsNormalized(double tolerance) const {
  double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  return std::abs(total - 1.0) <= tolerance;
}

std::size_t ResultSet::ArgMax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs_.size(); ++i) {
    if (probs_[i] > probs_[best]) best = i;
  }
  return best;
}

ResultSet NormalizeAndDedup(const ResultSet& rs, double mass_epsilon) {
  std::map<std::string, std::pair<Partition, double>> merged;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Partition& p = rs.partitions()[i];
    auto [it, inserted] = merged.try_emplace(p.encoding(), p, rs.probs()[i]);
    if (!inserted) {
      it->second.first = it->second.first.WithMergedEvidence(p);
      it->second.second += rs.probs()[i];
    }
  }
  double total = 0.0;
  for (const auto& [key, entry] : merged) total += entry.second;
  if (!(total > mass_epsilon)) {
    throw Error(ErrorCode::kTotalMassVanished,
                "total mass " + std::to_string(total));
  }

  std::vector<Partition> partitions;
  std::vector<double> probs;
  partitions.reserve(merged.size());
  probs.reserve(merged.size());
  for (auto& [key, entry] : merged) {
    partitions.push_back(std::move(entry.first));
    probs.push_back(entry.second / total);
  }
  return ResultSet(std::move(partitions), std::move(probs));
}

std::vector<MatchPair> MatchingSet(const ResultSet& rs) {
  std::vector<MatchPair> all;
  for (const Partition& p : rs.partitions()) {
    all.insert(all.end(), p.pairs().begin(), p.pairs().end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace erefine
