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


// Error-tolerant Bayesian reweighting of candidate partitions and repair of
// partitions that assert refuted pairs.

#ifndef EREFINE_UPDATE_H_
#define EREFINE_UPDATE_H_

#include <span>
#include <vector>

#include "erefine/core.h"
#include "erefine/oracle.h"

namespace erefine {

struct Evidence {
  OracleAnswer answer;
  // Oracle capability in (0, 1).
  double theta;
};

// P(partition | answer) with likelihood theta when the partition agrees
// with the verdict and 1 - theta otherwise. Throws kInvalidArgument for theta
// outside (0, 1).
ResultSet PosteriorSingle(const ResultSet& rs, const Evidence& ev);

// Applies the evidence in canonical pair order; the result does not depend on
// the order of `evidence`.
ResultSet PosteriorBatch(const ResultSet& rs, std::span<const Evidence> evidence);

struct RepairOutcome {
  ResultSet result;
  // Partitions that induced the refuted pair before repair.
  std::size_t touched = 0;
  // Of those, partitions whose cluster stayed connected after the edge was
  // removed, so they still induce the pair.
  std::size_t still_inducing = 0;
};

// Every partition inducing `refuted` is replaced, keeping its mass, by the
// partition with that evidence edge removed and components recomputed.
// Partitions that do not induce the pair are left alone.
RepairOutcome Repair(const ResultSet& rs, const MatchPair& refuted);

}  // namespace erefine

#endif  // EREFINE_UPDATE_H_
