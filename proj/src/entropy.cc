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


#include "erefine/entropy.h"

#include <algorithm>
#include <cmath>

#include "erefine/error.h"

namespace erefine {

QuestionSet::QuestionSet(std::vector<MatchPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate question");
  }
}

bool QuestionSet::Contains(const MatchPair& m) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), m);
}

QuestionSet QuestionSet::With(const MatchPair& m) const {
  std::vector<MatchPair> next = pairs_;
  next.push_back(m);
  return QuestionSet(std::move(next));
}

double EntropyBits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p >= kEntropyProbFloor) h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double ResultEntropy(const ResultSet& rs) { return EntropyBits(rs.probs()); }

double PairProb(const ResultSet& rs, const MatchPair& m) {
  double total = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs.partitions()[i].Induces(m)) total += rs.probs()[i];
  }
  return total;
}

double SetProb(const ResultSet& rs, std::span<const MatchPair> u) {
  double total = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Partition& p = rs.partitions()[i];
    if (std::all_of(u.begin(), u.end(),
                    [&p](const MatchPair& m) { return p.Induces(m); })) {
      total += rs.probs()[i];
    }
  }
  return total;
}

AnswerVector AnswerSignature(const Partition& p, const QuestionSet& q) {
  AnswerVector out;
  out.reserve(q.size());
  for (const MatchPair& m : q.pairs()) {
    out.push_back(p.Induces(m) ? Verdict::kYes : Verdict::kNo);
  }
  return out;
}

AnswerDistribution ComputeAnswerDistribution(const ResultSet& rs,
                                             const QuestionSet& q) {
  AnswerDistribution dist;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    dist[AnswerSignature(rs.partitions()[i], q)] += rs.probs()[i];
  }
  return dist;
}

double ExpectedReduction(const ResultSet& rs, const QuestionSet& q) {
  std::vector<double> masses;
  for (const auto& [answer, p] : ComputeAnswerDistribution(rs, q)) {
    masses.push_back(p);
  }
  return EntropyBits(masses);
}

double MarginalGain(const ResultSet& rs, const QuestionSet& selected,
                    const MatchPair& candidate) {
  double gain = ExpectedReduction(rs, selected.With(candidate)) -
                ExpectedReduction(rs, selected);
  return gain < 0.0 ? 0.0 : gain;
}

std::vector<std::uint8_t> PresenceColumn(const ResultSet& rs, const MatchPair& m) {
  std::vector<std::uint8_t> column(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    column[i] = rs.partitions()[i].Induces(m) ? 1 : 0;
  }
  return column;
}

SignatureClasses::SignatureClasses(std::span<const double> probs)
    : probs_(probs.begin(), probs.end()), class_of_(probs.size(), 0) {}

double SignatureClasses::EntropyWith(std::span<const std::uint8_t> column) const {
  std::vector<double> mass(2 * static_cast<std::size_t>(num_classes_), 0.0);
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    mass[2 * class_of_[i] + (column[i] ? 1 : 0)] += probs_[i];
  }
  return EntropyBits(mass);
}

void SignatureClasses::Add(std::span<const std::uint8_t> column) {
  std::vector<std::int64_t> relabel(2 * static_cast<std::size_t>(num_classes_), -1);
  std::uint32_t next = 0;
  std::vector<double> mass;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    std::size_t key = 2 * class_of_[i] + (column[i] ? 1 : 0);
    if (relabel[key] < 0) {
      relabel[key] = next++;
      mass.push_back(0.0);
    }
    class_of_[i] = static_cast<std::uint32_t>(relabel[key]);
    mass[class_of_[i]] += probs_[i];
  }
  num_classes_ = std::max<std::uint32_t>(next, 1);
  entropy_ = EntropyBits(mass);
}

}  // namespace erefine
