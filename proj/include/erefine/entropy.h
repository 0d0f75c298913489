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


// Information measures over a ResultSet, in bits.
//
// A partition answers every matching question deterministically (yes iff it
// induces the pair), so the expected entropy reduction of a question set is
// the entropy of the induced answer distribution.

#ifndef EREFINE_ENTROPY_H_
#define EREFINE_ENTROPY_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "erefine/core.h"

namespace erefine {

enum class Verdict : std::uint8_t { kNo = 0, kYes = 1 };

inline char VerdictChar(Verdict v) { return v == Verdict::kYes ? 'Y' : 'N'; }

// Sorted, duplicate-free list of matching questions.
class QuestionSet {
 public:
  QuestionSet() = default;
  // Sorts; throws kInvalidArgument on duplicates.
  explicit QuestionSet(std::vector<MatchPair> pairs);

  const std::vector<MatchPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool Contains(const MatchPair& m) const;
  QuestionSet With(const MatchPair& m) const;

  bool operator==(const QuestionSet&) const = default;

 private:
  std::vector<MatchPair> pairs_;
};

// Index-aligned with a QuestionSet.
using AnswerVector = std::vector<Verdict>;
using AnswerDistribution = std::map<AnswerVector, double>;

// Probabilities below this count as zero in entropy sums.
inline constexpr double kEntropyProbFloor = 1e-15;

// -sum p log2 p.
double EntropyBits(std::span<const double> probs);

double ResultEntropy(const ResultSet& rs);

// Mass of partitions inducing m.
double PairProb(const ResultSet& rs, const MatchPair& m);
// Mass of partitions inducing every pair of u; 1 for an empty u.
double SetProb(const ResultSet& rs, std::span<const MatchPair> u);

AnswerVector AnswerSignature(const Partition& p, const QuestionSet& q);

// Groups partitions by signature; only signatures with a partition appear.
AnswerDistribution ComputeAnswerDistribution(const ResultSet& rs,
                                             const QuestionSet& q);

double ExpectedReduction(const ResultSet& rs, const QuestionSet& q);

// ExpectedReduction(selected + candidate) - ExpectedReduction(selected).
double MarginalGain(const ResultSet& rs, const QuestionSet& selected,
                    const MatchPair& candidate);

// column[j] = 1 iff partition j induces m.
std::vector<std::uint8_t> PresenceColumn(const ResultSet& rs, const MatchPair& m);

// Incremental form of ComputeAnswerDistribution for selection loops: keeps
// the classes of partitions whose signatures agree on the questions added so
// far, so scoring one more question costs O(|partitions|).
class SignatureClasses {
 public:
  explicit SignatureClasses(std::span<const double> probs);

  // Entropy of the answer distribution of the added questions.
  double Entropy() const { return entropy_; }
  double EntropyWith(std::span<const std::uint8_t> column) const;
  void Add(std::span<const std::uint8_t> column);

 private:
  std::vector<double> probs_;
  std::vector<std::uint32_t> class_of_;
  std::uint32_t num_classes_ = 1;
  double entropy_ = 0.0;
};

}  // namespace erefine

#endif  // EREFINE_ENTROPY_H_
