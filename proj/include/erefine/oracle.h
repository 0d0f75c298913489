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


// Answer acquisition for matching questions: a seeded simulated oracle with
// capability theta and an HTTP chat-completions client.

#ifndef EREFINE_ORACLE_H_
#define EREFINE_ORACLE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "erefine/core.h"
#include "erefine/entropy.h"
#include "erefine/error.h"
#include "erefine/prompt.h"

namespace erefine {

enum class AnswerSource { kSimulated, kLlm };

struct OracleAnswer {
  MatchPair pair;
  Verdict verdict;
  Tokens tokens_in = 0;
  Tokens tokens_out = 0;
  AnswerSource source = AnswerSource::kSimulated;
  // Estimated cost of failed attempts that preceded this answer.
  Tokens failed_attempt_tokens = 0;

  Tokens billed() const { return tokens_in + tokens_out + failed_attempt_tokens; }
};

// Leading "yes"/"no" word after trimming whitespace and punctuation,
// case-insensitive. Throws kUnparseableAnswer.
Verdict ParseVerdict(std::string_view text);

// Raised when a batch cannot be completed; carries the tokens already spent
// on it so the caller can still account for them.
class OracleError : public Error {
 public:
  OracleError(ErrorCode code, const std::string& message, Tokens charged)
      : Error(code, message), charged_tokens_(charged) {}
  Tokens charged_tokens() const { return charged_tokens_; }

 private:
  Tokens charged_tokens_;
};

class Oracle {
 public:
  virtual ~Oracle() = default;
  // Answers in the question set's canonical order.
  virtual std::vector<OracleAnswer> Ask(const QuestionSet& q,
                                        const Dataset& records) = 0;
};

inline constexpr double kDefaultThetaEpsilon = 0.01;

double ClampTheta(double theta, double epsilon = kDefaultThetaEpsilon);

struct SimulatedOracleSpec {
  std::vector<MatchPair> truth;  // ground-truth duplicate pairs
  double theta = 1.0;            // probability of a correct answer
  std::uint64_t seed = 0;

  void Validate() const;
};

// True when the simulated answer to the `attempt`-th query of m is flipped.
// A pure function of (seed, m, attempt).
bool SimulatedFlip(std::uint64_t seed, const MatchPair& m, std::uint64_t attempt,
                   double theta);

// First-query answers; identical inputs give identical answers in any order.
std::vector<OracleAnswer> AskSimulated(const QuestionSet& q,
                                       const SimulatedOracleSpec& spec,
                                       const Dataset& records, const CostModel& cm);

// Re-asking a pair draws a fresh answer (attempt counter per pair), so
// repeated questions carry independent errors.
class SimulatedOracle : public Oracle {
 public:
  SimulatedOracle(SimulatedOracleSpec spec, CostModel cm);
  std::vector<OracleAnswer> Ask(const QuestionSet& q,
                                const Dataset& records) override;

 private:
  SimulatedOracleSpec spec_;
  CostModel cm_;
  std::vector<MatchPair> truth_sorted_;
  std::map<MatchPair, std::uint64_t> attempts_;
};

struct LlmEndpointSpec {
  std::string base_url = "https://api.openai.com/v1";
  std::string model_name = "gpt-4-turbo";
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_seconds = 30.0;
  int max_retries = 3;
  int max_in_flight = 4;
  double retry_backoff_seconds = 0.5;
  // Bill the estimated prompt cost for each failed attempt.
  bool charge_failed_attempts = true;

  void Validate() const;
};

// One POST {base_url}/chat/completions per question, at most max_in_flight
// concurrently. Throws OracleError (kAuthError, kTransportError,
// kUnparseableAnswer).
std::vector<OracleAnswer> AskLlm(const QuestionSet& q, const LlmEndpointSpec& spec,
                                 const Dataset& records, const CostModel& cm);

class LlmOracle : public Oracle {
 public:
  LlmOracle(LlmEndpointSpec spec, CostModel cm)
      : spec_(std::move(spec)), cm_(cm) {}
  std::vector<OracleAnswer> Ask(const QuestionSet& q,
                                const Dataset& records) override {
    return AskLlm(q, spec_, records, cm_);
  }

 private:
  LlmEndpointSpec spec_;
  CostModel cm_;
};

struct LabeledPair {
  MatchPair pair;
  Verdict truth;
};

// Fraction of correct oracle verdicts, clamped to [epsilon, 1 - epsilon].
double EstimateCapability(std::span<const LabeledPair> labeled, Oracle& oracle,
                          const Dataset& records,
                          double epsilon = kDefaultThetaEpsilon);

}  // namespace erefine

#endif  // EREFINE_ORACLE_H_
