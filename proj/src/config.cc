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


#include "erefine/config.h"

#include <charconv>
#include <functional>
#include <sstream>

#include "erefine/error.h"

namespace erefine {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void Bad(const std::string& key, const std::string& value,
                      const std::string& want) {
  throw Error(ErrorCode::kConfigError,
              key + " = \"" + value + "\": expected " + want);
}

double ToDouble(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) Bad(key, v, "a number");
  return out;
}

std::int64_t ToInt(const std::string& key, const std::string& v) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) Bad(key, v, "an integer");
  return out;
}

std::uint64_t ToUint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    Bad(key, v, "a non-negative integer");
  }
  return out;
}

std::size_t ToSize(const std::string& key, const std::string& v) {
  return static_cast<std::size_t>(ToUint(key, v));
}

bool ToBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  Bad(key, v, "true or false");
}

std::string Num(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::vector<double> ToList(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ToDouble(key, Trim(item)));
  if (out.empty()) Bad(key, v, "a comma-separated list");
  return out;
}

}  // namespace

void RunConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); };
  if (budget <= 0) fail("budget must be > 0");
  if (!(entropy_floor >= 0.0)) fail("entropy_floor must be >= 0");
  if (!(repair_rho >= 0.0 && repair_rho <= 1.0)) fail("repair_rho outside [0,1]");
  if (!(oracle_theta >= 0.0 && oracle_theta <= 1.0)) fail("theta outside [0,1]");
  if (update_theta && !(*update_theta > 0.0 && *update_theta < 1.0)) {
    fail("update_theta must be inside (0,1)");
  }
  if (!(theta_epsilon > 0.0 && theta_epsilon < 0.5)) {
    fail("theta_epsilon must be inside (0,0.5)");
  }
  try {
    sim.Validate();
    selection.Validate();
    cost.Validate();
    synth.perturb.Validate();
    if (oracle == OracleKind::kLlm) llm.Validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  if (records_path.empty() && synth.entities < 1) fail("synth.entities must be >= 1");
}

ConfigMap ParseConfigText(std::string_view text) {
  ConfigMap map;
  std::stringstream ss{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigError,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = Trim(trimmed.substr(0, eq));
    std::string value = Trim(trimmed.substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorCode::kConfigError, "line " + std::to_string(line_no) + ": empty key");
    }
    if (!map.emplace(key, value).second) {
      throw Error(ErrorCode::kConfigError,
                  "line " + std::to_string(line_no) + ": duplicate key " + key);
    }
  }
  return map;
}

RunConfig ConfigFromMap(const ConfigMap& map) {
  RunConfig c;
  using Setter = std::function<void(const std::string& key, const std::string& v)>;
  const std::map<std::string, Setter> setters = {
      {"records", [&](auto&, auto& v) { c.records_path = v; }},
      {"truth", [&](auto&, auto& v) { c.truth_path = v; }},
      {"synth.entities", [&](auto& k, auto& v) { c.synth.entities = ToSize(k, v); }},
      {"synth.dup_rate", [&](auto& k, auto& v) { c.synth.dup_rate = ToDouble(k, v); }},
      {"synth.name_abbreviation",
       [&](auto& k, auto& v) { c.synth.perturb.name_abbreviation = ToDouble(k, v); }},
      {"synth.typo", [&](auto& k, auto& v) { c.synth.perturb.typo = ToDouble(k, v); }},
      {"synth.variant", [&](auto& k, auto& v) { c.synth.perturb.variant = ToDouble(k, v); }},
      {"synth.value_drop",
       [&](auto& k, auto& v) { c.synth.perturb.value_drop = ToDouble(k, v); }},
      {"synth.max_extra_copies",
       [&](auto& k, auto& v) {
         c.synth.perturb.max_extra_copies = static_cast<int>(ToInt(k, v));
       }},
      {"similarity",
       [&](auto& k, auto& v) {
         auto kind = ParseSimilarityKind(v);
         if (!kind) Bad(k, v, "levenshtein, jaro or jaccard");
         c.sim.default_kind = *kind;
       }},
      {"thresholds", [&](auto& k, auto& v) { c.sim.thresholds = ToList(k, v); }},
      {"missing",
       [&](auto& k, auto& v) {
         auto p = ParseMissingValuePolicy(v);
         if (!p) Bad(k, v, "skip or mismatch");
         c.sim.missing = *p;
       }},
      {"init",
       [&](auto& k, auto& v) {
         auto m = ParseInitMode(v);
         if (!m) Bad(k, v, "uniform, gaussian or gaussian-sampled");
         c.init = *m;
       }},
      {"k", [&](auto& k, auto& v) { c.selection.k = ToSize(k, v); }},
      {"d", [&](auto& k, auto& v) { c.selection.d = ToSize(k, v); }},
      {"pool_limit", [&](auto& k, auto& v) { c.selection.pool_limit = ToSize(k, v); }},
      {"strategy",
       [&](auto& k, auto& v) {
         auto s = ParseStrategy(v);
         if (!s) Bad(k, v, "single, greedy or random");
         c.selection.strategy = *s;
       }},
      {"collapse_equivalent",
       [&](auto& k, auto& v) { c.collapse_equivalent = ToBool(k, v); }},
      {"chars_per_token", [&](auto& k, auto& v) { c.cost.chars_per_token = ToDouble(k, v); }},
      {"prompt_overhead_tokens",
       [&](auto& k, auto& v) {
         if (v == "auto") {
           c.cost.prompt_overhead_tokens.reset();
         } else {
           c.cost.prompt_overhead_tokens = ToInt(k, v);
         }
       }},
      {"response_tokens", [&](auto& k, auto& v) { c.cost.response_tokens = ToInt(k, v); }},
      {"oracle",
       [&](auto& k, auto& v) {
         if (v == "simulated") {
           c.oracle = OracleKind::kSimulated;
         } else if (v == "llm") {
           c.oracle = OracleKind::kLlm;
         } else {
           Bad(k, v, "simulated or llm");
         }
       }},
      {"theta", [&](auto& k, auto& v) { c.oracle_theta = ToDouble(k, v); }},
      {"update_theta",
       [&](auto& k, auto& v) {
         c.estimate_theta = false;
         c.update_theta.reset();
         if (v == "estimate") {
           c.estimate_theta = true;
         } else if (v != "auto") {
           c.update_theta = ToDouble(k, v);
         }
       }},
      {"probe_pairs", [&](auto& k, auto& v) { c.probe_pairs = ToSize(k, v); }},
      {"theta_epsilon", [&](auto& k, auto& v) { c.theta_epsilon = ToDouble(k, v); }},
      {"llm.base_url", [&](auto&, auto& v) { c.llm.base_url = v; }},
      {"llm.model", [&](auto&, auto& v) { c.llm.model_name = v; }},
      {"llm.api_key_env", [&](auto&, auto& v) { c.llm.api_key_env = v; }},
      {"llm.timeout", [&](auto& k, auto& v) { c.llm.timeout_seconds = ToDouble(k, v); }},
      {"llm.max_retries",
       [&](auto& k, auto& v) { c.llm.max_retries = static_cast<int>(ToInt(k, v)); }},
      {"llm.max_in_flight",
       [&](auto& k, auto& v) { c.llm.max_in_flight = static_cast<int>(ToInt(k, v)); }},
      {"llm.retry_backoff",
       [&](auto& k, auto& v) { c.llm.retry_backoff_seconds = ToDouble(k, v); }},
      {"llm.charge_failed_attempts",
       [&](auto& k, auto& v) { c.llm.charge_failed_attempts = ToBool(k, v); }},
      {"budget", [&](auto& k, auto& v) { c.budget = ToInt(k, v); }},
      {"entropy_floor", [&](auto& k, auto& v) { c.entropy_floor = ToDouble(k, v); }},
      {"max_iterations", [&](auto& k, auto& v) { c.max_iterations = ToSize(k, v); }},
      {"repair_rho", [&](auto& k, auto& v) { c.repair_rho = ToDouble(k, v); }},
      {"seed", [&](auto& k, auto& v) { c.seed = ToUint(k, v); }},
      {"out", [&](auto&, auto& v) { c.out_dir = v; }},
  };

  for (const auto& [key, value] : map) {
    auto it = setters.find(key);
    if (it != setters.end()) {
      it->second(key, value);
      continue;
    }
    constexpr std::string_view kPerAttribute = "similarity.";
    if (key.starts_with(kPerAttribute) && key.size() > kPerAttribute.size()) {
      auto kind = ParseSimilarityKind(value);
      if (!kind) Bad(key, value, "levenshtein, jaro or jaccard");
      c.sim.per_attribute[key.substr(kPerAttribute.size())] = *kind;
      continue;
    }
    throw Error(ErrorCode::kConfigError, "unknown key " + key);
  }
  c.Validate();
  return c;
}

ConfigMap ConfigToMap(const RunConfig& c) {
  ConfigMap m;
  m["records"] = c.records_path;
  m["truth"] = c.truth_path;
  m["synth.entities"] = std::to_string(c.synth.entities);
  m["synth.dup_rate"] = Num(c.synth.dup_rate);
  m["synth.name_abbreviation"] = Num(c.synth.perturb.name_abbreviation);
  m["synth.typo"] = Num(c.synth.perturb.typo);
  m["synth.variant"] = Num(c.synth.perturb.variant);
  m["synth.value_drop"] = Num(c.synth.perturb.value_drop);
  m["synth.max_extra_copies"] = std::to_string(c.synth.perturb.max_extra_copies);
  m["similarity"] = std::string(SimilarityKindName(c.sim.default_kind));
  for (const auto& [attr, kind] : c.sim.per_attribute) {
    m["similarity." + attr] = std::string(SimilarityKindName(kind));
  }
  std::string thresholds;
  for (double t : c.sim.thresholds) {
    if (!thresholds.empty()) thresholds += ",";
    thresholds += Num(t);
  }
  m["thresholds"] = thresholds;
  m["missing"] = std::string(MissingValuePolicyName(c.sim.missing));
  m["init"] = std::string(InitModeName(c.init));
  m["k"] = std::to_string(c.selection.k);
  m["d"] = std::to_string(c.selection.d);
  m["pool_limit"] = std::to_string(c.selection.pool_limit);
  m["strategy"] = std::string(StrategyName(c.selection.strategy));
  m["collapse_equivalent"] = c.collapse_equivalent ? "true" : "false";
  m["chars_per_token"] = Num(c.cost.chars_per_token);
  m["prompt_overhead_tokens"] = c.cost.prompt_overhead_tokens
                                    ? std::to_string(*c.cost.prompt_overhead_tokens)
                                    : "auto";
  m["response_tokens"] = std::to_string(c.cost.response_tokens);
  m["oracle"] = c.oracle == OracleKind::kSimulated ? "simulated" : "llm";
  m["theta"] = Num(c.oracle_theta);
  m["update_theta"] = c.estimate_theta   ? "estimate"
                      : c.update_theta ? Num(*c.update_theta)
                                       : "auto";
  m["probe_pairs"] = std::to_string(c.probe_pairs);
  m["theta_epsilon"] = Num(c.theta_epsilon);
  m["llm.base_url"] = c.llm.base_url;
  m["llm.model"] = c.llm.model_name;
  m["llm.api_key_env"] = c.llm.api_key_env;
  m["llm.timeout"] = Num(c.llm.timeout_seconds);
  m["llm.max_retries"] = std::to_string(c.llm.max_retries);
  m["llm.max_in_flight"] = std::to_string(c.llm.max_in_flight);
  m["llm.retry_backoff"] = Num(c.llm.retry_backoff_seconds);
  m["llm.charge_failed_attempts"] = c.llm.charge_failed_attempts ? "true" : "false";
  m["budget"] = std::to_string(c.budget);
  m["entropy_floor"] = Num(c.entropy_floor);
  m["max_iterations"] = std::to_string(c.max_iterations);
  m["repair_rho"] = Num(c.repair_rho);
  m["seed"] = std::to_string(c.seed);
  m["out"] = c.out_dir;
  return m;
}

std::string FormatConfig(const ConfigMap& map) {
  std::string out;
  for (const auto& [key, value] : map) out += key + " = " + value + "\n";
  return out;
}

double ResolvedUpdateTheta(const RunConfig& cfg) {
  return cfg.update_theta ? *cfg.update_theta
                          : ClampTheta(cfg.oracle_theta, cfg.theta_epsilon);
}

}  // namespace erefine
