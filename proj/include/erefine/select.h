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


// Budget-aware selection of matching questions.
//
// Every selector works on a canonical (sorted) pool of priced pairs and
// breaks ties toward the earlier pair, so runs are bit-reproducible.

#ifndef EREFINE_SELECT_H_
#define EREFINE_SELECT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "erefine/core.h"
#include "erefine/entropy.h"
#include "erefine/prompt.h"

namespace erefine {

class BudgetState {
 public:
  explicit BudgetState(Tokens limit);

  Tokens limit() const { return limit_; }
  Tokens spent() const { return spent_; }
  Tokens remaining() const { return limit_ - spent_; }
  bool CanAfford(Tokens cost) const { return cost <= remaining(); }

  // Spend past the limit (usage reported above the estimate) is clamped at
  // the limit and accumulated in overrun().
  void Charge(Tokens tokens);
  Tokens overrun() const { return overrun_; }

 private:
  Tokens limit_;
  Tokens spent_ = 0;
  Tokens overrun_ = 0;
};

struct PricedPair {
  MatchPair pair;
  Tokens cost;
};

// Sorted by pair.
std::vector<PricedPair> PricePool(std::span<const MatchPair> pool,
                                  const Dataset& records, const CostModel& cm);

Tokens TotalCost(const QuestionSet& q, std::span<const PricedPair> pool);

enum class Strategy { kSingle, kGreedy, kRandom };

std::optional<Strategy> ParseStrategy(std::string_view name);
std::string_view StrategyName(Strategy s);

struct SelectionConfig {
  std::size_t k = 1;
  // Partial enumeration depth; clamped to k and dropped to 1 for pools
  // larger than pool_limit.
  std::size_t d = 3;
  std::size_t pool_limit = 200;
  Strategy strategy = Strategy::kGreedy;
  std::uint64_t seed = 0;

  // Throws kInvalidArgument.
  void Validate() const;
};

// Pairs of the matching set whose probability is strictly inside (0, 1);
// the rest have zero gain in every question set.
std::vector<MatchPair> CandidatePool(const ResultSet& rs,
                                     std::span<const MatchPair> matching_set);
std::vector<MatchPair> CandidatePool(const ResultSet& rs);

// Keeps, for each distinct presence column, only its cheapest pair. Pairs
// with equal columns are interchangeable in every question set, so the
// optimum over the collapsed pool equals the optimum over the full pool.
std::vector<PricedPair> CollapseEquivalent(const ResultSet& rs,
                                           std::span<const PricedPair> pool);

// Best expected reduction per token among affordable pairs; nullopt when
// nothing affordable has positive gain.
std::optional<MatchPair> SelectSingle(const ResultSet& rs,
                                      std::span<const PricedPair> pool,
                                      const BudgetState& budget);

struct GreedyStats {
  std::size_t effective_d = 0;
  bool downgraded = false;
  std::size_t seeds_tried = 0;
};

// Greedy with partial enumeration: the best affordable set of size < d
// versus bang-per-buck greedy extensions of every affordable size-d seed.
QuestionSet SelectGreedyPe(const ResultSet& rs, std::span<const PricedPair> pool,
                           const BudgetState& budget, const SelectionConfig& cfg,
                           GreedyStats* stats = nullptr);

// Uniform sampling without replacement among affordable pairs.
QuestionSet SelectRandom(std::span<const PricedPair> pool,
                         const BudgetState& budget, std::size_t k,
                         std::uint64_t seed);

inline constexpr std::size_t kBruteForcePoolLimit = 20;

// Exact optimum over affordable subsets of size <= k. Ties prefer lower cost,
// then fewer questions. Throws kPoolTooLarge past kBruteForcePoolLimit.
QuestionSet BruteForceSelect(const ResultSet& rs, std::span<const PricedPair> pool,
                             const BudgetState& budget, std::size_t k);

}  // namespace erefine

#endif  // EREFINE_SELECT_H_
