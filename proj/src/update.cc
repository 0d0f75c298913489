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


#include "erefine/update.h"

#include <algorithm>

#include "erefine/error.h"

namespace erefine {

ResultSet PosteriorSingle(const ResultSet& rs, const Evidence& ev) {
  if (!(ev.theta > 0.0 && ev.theta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "theta must be inside (0,1)");
  }
  const bool said_yes = ev.answer.verdict == Verdict::kYes;
  std::vector<double> probs(rs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    bool agrees = rs.partitions()[i].Induces(ev.answer.pair) == said_yes;
    probs[i] = rs.probs()[i] * (agrees ? ev.theta : 1.0 - ev.theta);
    total += probs[i];
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kTotalMassVanished, "posterior mass is zero");
  for (double& p : probs) p /= total;
  return rs.WithProbs(std::move(probs));
}

ResultSet PosteriorBatch(const ResultSet& rs, std::span<const Evidence> evidence) {
  std::vector<const Evidence*> ordered;
  ordered.reserve(evidence.size());
  for (const Evidence& ev : evidence) ordered.push_back(&ev);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Evidence* a, const Evidence* b) {
                     if (a->answer.pair != b->answer.pair) {
                       return a->answer.pair < b->answer.pair;
                     }
                     if (a->answer.verdict != b->answer.verdict) {
                       return a->answer.verdict < b->answer.verdict;
                     }
                     return a->theta < b->theta;
                   });
  ResultSet out = rs;
  for (const Evidence* ev : ordered) out = PosteriorSingle(out, *ev);
  return out;
}

RepairOutcome Repair(const ResultSet& rs, const MatchPair& refuted) {
  RepairOutcome outcome;
  std::vector<Partition> partitions;
  partitions.reserve(rs.size());
  for (const Partition& p : rs.partitions()) {
    if (!p.Induces(refuted)) {
      partitions.push_back(p);
      continue;
    }
    ++outcome.touched;
    Partition repaired = p.WithoutEdge(refuted);
    if (repaired.Induces(refuted)) ++outcome.still_inducing;
    partitions.push_back(std::move(repaired));
  }
  if (outcome.touched == 0) {
    outcome.result = rs;
    return outcome;
  }
  outcome.result = NormalizeAndDedup(ResultSet(std::move(partitions), rs.probs()));
  return outcome;
}

}  // namespace erefine
