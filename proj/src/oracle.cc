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


#include <algorithm>
#include <cctype>

#include "erefine/oracle.h"
#include "erefine/rng.h"

namespace erefine {
namespace {

bool StartsWithWord(std::string_view text, std::string_view word) {
  if (text.size() < word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) != word[i]) return false;
  }
  return text.size() == word.size() ||
         !std::isalnum(static_cast<unsigned char>(text[word.size()]));
}

}  // namespace

Verdict ParseVerdict(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[start]);
    if (!std::isspace(c) && !std::ispunct(c)) break;
    ++start;
  }
  std::string_view rest = text.substr(start);
  if (StartsWithWord(rest, "yes")) return Verdict::kYes;
  if (StartsWithWord(rest, "no")) return Verdict::kNo;
  throw Error(ErrorCode::kUnparseableAnswer,
              "no yes/no verdict in \"" + std::string(text.substr(0, 80)) + "\"");
}

double ClampTheta(double theta, double epsilon) {
  return std::clamp(theta, epsilon, 1.0 - epsilon);
}

void SimulatedOracleSpec::Validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "theta outside [0,1]");
  }
}

bool SimulatedFlip(std::uint64_t seed, const MatchPair& m, std::uint64_t attempt,
                   double theta) {
  std::uint64_t bits = SplitMix64(seed ^ StableHash(m.Encode()));
  bits = SplitMix64(bits ^ SplitMix64(attempt));
  return ToUnitInterval(bits) >= theta;
}

namespace {

OracleAnswer SimulatedAnswer(const MatchPair& m, bool duplicate, bool flipped,
                             const Dataset& records, const CostModel& cm) {
  OracleAnswer a{m, (duplicate != flipped) ? Verdict::kYes : Verdict::kNo};
  a.tokens_in = PromptTokens(m, records, cm);
  a.tokens_out = cm.response_tokens;
  a.source = AnswerSource::kSimulated;
  return a;
}

}  // namespace

std::vector<OracleAnswer> AskSimulated(const QuestionSet& q,
                                       const SimulatedOracleSpec& spec,
                                       const Dataset& records, const CostModel& cm) {
  SimulatedOracle oracle(spec, cm);
  return oracle.Ask(q, records);
}

SimulatedOracle::SimulatedOracle(SimulatedOracleSpec spec, CostModel cm)
    : spec_(std::move(spec)), cm_(cm), truth_sorted_(spec_.truth) {
  spec_.Validate();
  std::sort(truth_sorted_.begin(), truth_sorted_.end());
}

std::vector<OracleAnswer> SimulatedOracle::Ask(const QuestionSet& q,
                                               const Dataset& records) {
  std::vector<OracleAnswer> out;
  out.reserve(q.size());
  for (const MatchPair& m : q.pairs()) {
    bool duplicate = std::binary_search(truth_sorted_.begin(), truth_sorted_.end(), m);
    std::uint64_t attempt = attempts_[m]++;
    bool flipped = SimulatedFlip(spec_.seed, m, attempt, spec_.theta);
    out.push_back(SimulatedAnswer(m, duplicate, flipped, records, cm_));
  }
  return out;
}

double EstimateCapability(std::span<const LabeledPair> labeled, Oracle& oracle,
                          const Dataset& records, double epsilon) {
  if (labeled.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no labeled pairs");
  }
  std::map<MatchPair, Verdict> truth;
  std::vector<MatchPair> pairs;
  for (const LabeledPair& l : labeled) {
    if (truth.emplace(l.pair, l.truth).second) pairs.push_back(l.pair);
  }
  auto answers = oracle.Ask(QuestionSet(std::move(pairs)), records);
  std::size_t correct = 0;
  for (const OracleAnswer& a : answers) {
    if (a.verdict == truth.at(a.pair)) ++correct;
  }
  return ClampTheta(static_cast<double>(correct) / static_cast<double>(answers.size()),
                    epsilon);
}

}  // namespace erefine
