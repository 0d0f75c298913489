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


// String similarity, threshold-swept candidate partitions and the initial
// probability assignment over them.

#ifndef EREFINE_SIMGEN_H_
#define EREFINE_SIMGEN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erefine/core.h"

namespace erefine {

enum class SimilarityKind { kLevenshtein, kJaro, kJaccard };
enum class MissingValuePolicy { kTreatAsMismatch, kSkipAttribute };
enum class InitMode {
  kUniform,
  // Standard-normal density at the n quantile midpoints.
  kGaussian,
  // Sorted standard-normal draws shifted to be positive, then normalized.
  kGaussianSampled,
};

std::optional<SimilarityKind> ParseSimilarityKind(std::string_view name);
std::string_view SimilarityKindName(SimilarityKind kind);
std::optional<InitMode> ParseInitMode(std::string_view name);
std::string_view InitModeName(InitMode mode);
std::optional<MissingValuePolicy> ParseMissingValuePolicy(std::string_view name);
std::string_view MissingValuePolicyName(MissingValuePolicy policy);

// 0.50, 0.55, ..., 0.95.
std::vector<double> DefaultThresholds();

struct SimConfig {
  SimilarityKind default_kind = SimilarityKind::kLevenshtein;
  // Attribute name -> kind; attributes not listed use default_kind.
  std::map<std::string, SimilarityKind> per_attribute;
  std::vector<double> thresholds = DefaultThresholds();
  MissingValuePolicy missing = MissingValuePolicy::kSkipAttribute;

  // Throws kInvalidArgument unless thresholds are non-empty, strictly
  // increasing and inside [0, 1].
  void Validate() const;
  SimilarityKind KindFor(const std::string& attribute) const;
};

// Normalized edit-distance similarity 1 - d / max(|a|, |b|); 1 for two empties.
double LevenshteinSimilarity(std::string_view a, std::string_view b);
double JaroSimilarity(std::string_view a, std::string_view b);
// Jaccard index over lowercased alphanumeric token sets.
double JaccardSimilarity(std::string_view a, std::string_view b);

std::vector<std::string> Tokenize(std::string_view text);

// nullopt is the skip marker: the attribute is excluded from the all-attribute
// test. Only produced for absent values under kSkipAttribute.
std::optional<double> Similarity(const AttributeValue& a, const AttributeValue& b,
                                 SimilarityKind kind, MissingValuePolicy policy);

// Per-pair minimum similarity over compared attributes; pairs whose
// attributes were all skipped get no entry. Lets every threshold of a sweep
// reuse one all-pairs pass.
class PairSimilarityTable {
 public:
  PairSimilarityTable(const Dataset& records, const SimConfig& cfg);

  struct Entry {
    std::size_t i;
    std::size_t j;
    double min_similarity;
  };

  const std::vector<Entry>& entries() const { return entries_; }
  // Edges (i, j) whose every compared attribute scores >= threshold.
  std::vector<MatchPair> EdgesAt(double threshold) const;

 private:
  const Dataset* records_;
  std::vector<Entry> entries_;
};

// Throws kEmptyAttributeSchema when the schema has no attributes and
// kInvalidArgument when threshold is outside [0, 1].
Partition GeneratePartition(const Dataset& records, double threshold,
                            const SimConfig& cfg);

// Length-n probability vector, entries > 0. Deterministic in (n, mode, seed);
// the seed only matters for kGaussianSampled.
std::vector<double> InitDistribution(std::size_t n, InitMode mode,
                                     std::uint64_t seed);

// One partition per threshold, weighted by InitDistribution over threshold
// order; identical partitions are merged with their weights summed.
ResultSet SweepResultSet(const Dataset& records, const SimConfig& cfg,
                         InitMode init, std::uint64_t seed);

}  // namespace erefine

#endif  // EREFINE_SIMGEN_H_
