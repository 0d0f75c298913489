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


#include "erefine/select.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "erefine/error.h"

namespace erefine {
namespace {

// Gains at or below this are treated as no information.
constexpr double kGainEpsilon = 1e-12;

template <typename Fn>
void ForEachCombination(std::size_t n, std::size_t r, Fn&& fn) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Columns {
  Columns(const ResultSet& rs, std::span<const PricedPair> pool) {
    columns.reserve(pool.size());
    for (const PricedPair& p : pool) columns.push_back(PresenceColumn(rs, p.pair));
  }
  std::vector<std::vector<std::uint8_t>> columns;
};

QuestionSet ToQuestionSet(std::span<const PricedPair> pool,
                          std::span<const std::size_t> picked) {
  std::vector<MatchPair> pairs;
  pairs.reserve(picked.size());
  for (std::size_t i : picked) pairs.push_back(pool[i].pair);
  return QuestionSet(std::move(pairs));
}

Tokens CostOf(std::span<const PricedPair> pool, std::span<const std::size_t> picked) {
  Tokens total = 0;
  for (std::size_t i : picked) total += pool[i].cost;
  return total;
}

SignatureClasses ClassesOf(const ResultSet& rs, const Columns& cols,
                           std::span<const std::size_t> picked) {
  SignatureClasses classes(rs.probs());
  for (std::size_t i : picked) classes.Add(cols.columns[i]);
  return classes;
}

}  // namespace

BudgetState::BudgetState(Tokens limit) : limit_(limit) {
  if (limit < 0) throw Error(ErrorCode::kInvalidArgument, "negative budget");
}

void BudgetState::Charge(Tokens tokens) {
  if (tokens < 0) throw Error(ErrorCode::kInvalidArgument, "negative charge");
  if (tokens > remaining()) {
    overrun_ += tokens - remaining();
    spent_ = limit_;
  } else {
    spent_ += tokens;
  }
}

std::vector<PricedPair> PricePool(std::span<const MatchPair> pool,
                                  const Dataset& records, const CostModel& cm) {
  std::vector<PricedPair> out;
  out.reserve(pool.size());
  for (const MatchPair& m : pool) out.push_back({m, MqCost(m, records, cm)});
  std::sort(out.begin(), out.end(),
            [](const PricedPair& a, const PricedPair& b) { return a.pair < b.pair; });
  return out;
}

Tokens TotalCost(const QuestionSet& q, std::span<const PricedPair> pool) {
  Tokens total = 0;
  for (const MatchPair& m : q.pairs()) {
    auto it = std::find_if(pool.begin(), pool.end(),
                           [&m](const PricedPair& p) { return p.pair == m; });
    if (it == pool.end()) {
      throw Error(ErrorCode::kInvalidArgument, "question not in pool: " + m.Encode());
    }
    total += it->cost;
  }
  return total;
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "single") return Strategy::kSingle;
  if (name == "greedy") return Strategy::kGreedy;
  if (name == "random") return Strategy::kRandom;
  return std::nullopt;
}

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kSingle: return "single";
    case Strategy::kGreedy: return "greedy";
    case Strategy::kRandom: return "random";
  }
  return "greedy";
}

void SelectionConfig::Validate() const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "d must be >= 1");
}

std::vector<MatchPair> CandidatePool(const ResultSet& rs,
                                     std::span<const MatchPair> matching_set) {
  std::vector<MatchPair> pool;
  for (const MatchPair& m : matching_set) {
    double p = PairProb(rs, m);
    if (p > kGainEpsilon && p < 1.0 - kGainEpsilon) pool.push_back(m);
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<MatchPair> CandidatePool(const ResultSet& rs) {
  return CandidatePool(rs, MatchingSet(rs));
}

std::vector<PricedPair> CollapseEquivalent(const ResultSet& rs,
                                           std::span<const PricedPair> pool) {
  std::map<std::vector<std::uint8_t>, std::size_t> cheapest;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto [it, inserted] = cheapest.try_emplace(PresenceColumn(rs, pool[i].pair), i);
    if (!inserted) {
      const PricedPair& held = pool[it->second];
      if (pool[i].cost < held.cost ||
          (pool[i].cost == held.cost && pool[i].pair < held.pair)) {
        it->second = i;
      }
    }
  }
  std::vector<PricedPair> out;
  out.reserve(cheapest.size());
  for (const auto& [column, i] : cheapest) out.push_back(pool[i]);
  std::sort(out.begin(), out.end(),
            [](const PricedPair& a, const PricedPair& b) { return a.pair < b.pair; });
  return out;
}

std::optional<MatchPair> SelectSingle(const ResultSet& rs,
                                      std::span<const PricedPair> pool,
                                      const BudgetState& budget) {
  SignatureClasses empty(rs.probs());
  std::optional<std::size_t> best;
  double best_ratio = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!budget.CanAfford(pool[i].cost)) continue;
    double gain = empty.EntropyWith(PresenceColumn(rs, pool[i].pair));
    if (gain <= kGainEpsilon) continue;
    double ratio = gain / static_cast<double>(pool[i].cost);
    if (!best || ratio > best_ratio) {
      best = i;
      best_ratio = ratio;
    }
  }
  if (!best) return std::nullopt;
  return pool[*best].pair;
}

QuestionSet SelectGreedyPe(const ResultSet& rs, std::span<const PricedPair> pool,
                           const BudgetState& budget, const SelectionConfig& cfg,
                           GreedyStats* stats) {
  cfg.Validate();
  const Tokens limit = budget.remaining();
  const std::size_t n = pool.size();
  std::size_t d = std::min(cfg.d, cfg.k);
  bool downgraded = false;
  if (n > cfg.pool_limit && d > 1) {
    d = 1;
    downgraded = true;
  }
  const Columns cols(rs, pool);

  // Best affordable set below the enumeration depth.
  std::vector<std::size_t> best_small;
  double best_small_h = 0.0;
  for (std::size_t size = 1; size < d; ++size) {
    ForEachCombination(n, size, [&](std::span<const std::size_t> picked) {
      if (CostOf(pool, picked) > limit) return;
      double h = ClassesOf(rs, cols, picked).Entropy();
      if (h > best_small_h + kGainEpsilon) {
        best_small_h = h;
        best_small.assign(picked.begin(), picked.end());
      }
    });
  }

  // Greedy extension of every affordable size-d seed.
  std::vector<std::size_t> best_ext;
  double best_ext_h = -1.0;
  std::size_t seeds = 0;
  std::vector<char> in_set(n, 0);
  ForEachCombination(n, d, [&](std::span<const std::size_t> seed) {
    Tokens cost = CostOf(pool, seed);
    if (cost > limit) return;
    ++seeds;
    SignatureClasses classes = ClassesOf(rs, cols, seed);
    std::vector<std::size_t> chosen(seed.begin(), seed.end());
    std::fill(in_set.begin(), in_set.end(), 0);
    for (std::size_t i : seed) in_set[i] = 1;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_set[i]) rest.push_back(i);
    }

    while (!rest.empty() && cost < limit && chosen.size() < cfg.k) {
      const double h = classes.Entropy();
      std::size_t best_pos = 0;
      double best_gain = 0.0;
      double best_ratio = -1.0;
      for (std::size_t pos = 0; pos < rest.size(); ++pos) {
        std::size_t i = rest[pos];
        double gain = classes.EntropyWith(cols.columns[i]) - h;
        double ratio = gain / static_cast<double>(pool[i].cost);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best_gain = gain;
          best_pos = pos;
        }
      }
      if (best_gain <= kGainEpsilon) break;
      std::size_t pick = rest[best_pos];
      if (cost + pool[pick].cost <= limit) {
        classes.Add(cols.columns[pick]);
        chosen.push_back(pick);
        cost += pool[pick].cost;
      }
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }
    double h = classes.Entropy();
    if (h > best_ext_h + kGainEpsilon) {
      best_ext_h = h;
      best_ext = std::move(chosen);
    }
  });

  if (stats != nullptr) {
    stats->effective_d = d;
    stats->downgraded = downgraded;
    stats->seeds_tried = seeds;
  }
  if (best_ext_h > best_small_h + kGainEpsilon) {
    return ToQuestionSet(pool, best_ext);
  }
  return ToQuestionSet(pool, best_small);
}

QuestionSet SelectRandom(std::span<const PricedPair> pool,
                         const BudgetState& budget, std::size_t k,
                         std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  Tokens left = budget.remaining();
  std::vector<std::size_t> affordable;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].cost <= left) affordable.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(affordable.begin(), affordable.end(), rng);
  std::vector<std::size_t> picked;
  for (std::size_t i : affordable) {
    if (picked.size() == k) break;
    if (pool[i].cost > left) continue;
    picked.push_back(i);
    left -= pool[i].cost;
  }
  return ToQuestionSet(pool, picked);
}

QuestionSet BruteForceSelect(const ResultSet& rs, std::span<const PricedPair> pool,
                             const BudgetState& budget, std::size_t k) {
  if (pool.size() > kBruteForcePoolLimit) {
    throw Error(ErrorCode::kPoolTooLarge,
                std::to_string(pool.size()) + " > " +
                    std::to_string(kBruteForcePoolLimit));
  }
  const Tokens limit = budget.remaining();
  const Columns cols(rs, pool);
  std::vector<std::size_t> best;
  double best_h = 0.0;
  Tokens best_cost = 0;
  for (std::size_t size = 1; size <= std::min(k, pool.size()); ++size) {
    ForEachCombination(pool.size(), size, [&](std::span<const std::size_t> picked) {
      Tokens cost = CostOf(pool, picked);
      if (cost > limit) return;
      double h = ClassesOf(rs, cols, picked).Entropy();
      bool better = h > best_h + kGainEpsilon ||
                    (h > best_h - kGainEpsilon && cost < best_cost);
      if (better) {
        best_h = std::max(best_h, h);
        best_cost = cost;
        best.assign(picked.begin(), picked.end());
      }
    });
  }
  return ToQuestionSet(pool, best);
}

}  // namespace erefine
