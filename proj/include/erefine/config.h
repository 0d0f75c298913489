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


// Run configuration and its flat "key = value" file form.

#ifndef EREFINE_CONFIG_H_
#define EREFINE_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "erefine/oracle.h"
#include "erefine/prompt.h"
#include "erefine/select.h"
#include "erefine/simgen.h"
#include "erefine/synth.h"

namespace erefine {

enum class OracleKind { kSimulated, kLlm };

struct SynthSpec {
  std::size_t entities = 50;
  double dup_rate = 0.4;
  PerturbationSpec perturb;
};

struct RunConfig {
  // Files take precedence; with no records path a synthetic corpus is built.
  std::string records_path;
  std::string truth_path;
  SynthSpec synth;

  SimConfig sim;
  InitMode init = InitMode::kGaussian;
  SelectionConfig selection;
  // Collapse pairs with identical presence columns before greedy selection.
  bool collapse_equivalent = true;
  CostModel cost;

  OracleKind oracle = OracleKind::kSimulated;
  // Accuracy of the simulated oracle.
  double oracle_theta = 0.9;
  LlmEndpointSpec llm;
  // Capability assumed by the updates; unset means ClampTheta(oracle_theta),
  // or a probe estimate when estimate_theta is set.
  std::optional<double> update_theta;
  bool estimate_theta = false;
  std::size_t probe_pairs = 100;
  double theta_epsilon = kDefaultThetaEpsilon;

  Tokens budget = 1000;
  double entropy_floor = 0.01;
  std::size_t max_iterations = 10000;
  double repair_rho = 0.05;

  std::uint64_t seed = 0;
  std::string out_dir;

  // Throws kConfigError.
  void Validate() const;
};

using ConfigMap = std::map<std::string, std::string>;

// '#' starts a comment; blank lines are ignored. Throws kConfigError on
// malformed lines or duplicate keys.
ConfigMap ParseConfigText(std::string_view text);

// Throws kConfigError on unknown keys or unparseable values.
RunConfig ConfigFromMap(const ConfigMap& map);

// Every key with its resolved value, sorted; ConfigFromMap inverts it.
ConfigMap ConfigToMap(const RunConfig& cfg);
std::string FormatConfig(const ConfigMap& map);

// update_theta if set, otherwise ClampTheta(oracle_theta).
double ResolvedUpdateTheta(const RunConfig& cfg);

}  // namespace erefine

#endif  // EREFINE_CONFIG_H_
