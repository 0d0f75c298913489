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


// Seeded synthetic professional-directory corpora with known duplicates.

#ifndef EREFINE_SYNTH_H_
#define EREFINE_SYNTH_H_

#include <cstdint>
#include <vector>

#include "erefine/core.h"

namespace erefine {

// Per-duplicate probabilities of each perturbation.
struct PerturbationSpec {
  double name_abbreviation = 0.3;  // "Jane Smith" -> "J. Smith"
  double typo = 0.1;               // one character edit, per attribute
  double variant = 0.3;            // alternate spelling of title/company/city
  double value_drop = 0.0;         // attribute left empty
  // Extra copies per duplicated entity: 1 + geometric, capped.
  int max_extra_copies = 3;

  void Validate() const;
};

struct SynthCorpus {
  Dataset records;
  std::vector<MatchPair> truth;  // all within-entity pairs, sorted
  std::vector<std::size_t> cluster_sizes;  // records per entity
};

// Deterministic in all arguments. Each entity is duplicated with probability
// dup_rate. Throws kInvalidArgument for n_entities < 1 or dup_rate outside
// [0, 1].
SynthCorpus SynthGenerate(std::size_t n_entities, double dup_rate,
                          const PerturbationSpec& perturb, std::uint64_t seed);

}  // namespace erefine

#endif  // EREFINE_SYNTH_H_
