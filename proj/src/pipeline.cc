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


#include "erefine/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "erefine/dataset_io.h"
#include "erefine/entropy.h"
#include "erefine/rng.h"
#include "erefine/select.h"
#include "erefine/simgen.h"
#include "erefine/synth.h"
#include "erefine/update.h"

namespace erefine {
namespace {

using nlohmann::json;

std::string Fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

IterationLog Snapshot(std::size_t iteration, const ResultSet& rs,
                      std::span<const MatchPair> truth, Tokens cumulative) {
  IterationLog log;
  log.iteration = iteration;
  log.cumulative_tokens = cumulative;
  log.entropy_bits = ResultEntropy(rs);
  const Partition& top = rs.partitions()[rs.ArgMax()];
  log.top_partition = top.encoding();
  if (!truth.empty()) log.metrics = ComputeMetrics(top, truth);
  return log;
}

QuestionSet Choose(const RunConfig& cfg, const ResultSet& rs,
                   std::span<const PricedPair> priced, const BudgetState& budget,
                   std::uint64_t round_seed) {
  const SelectionConfig& sel = cfg.selection;
  switch (sel.strategy) {
    case Strategy::kRandom:
      return SelectRandom(priced, budget, sel.k, round_seed);
    case Strategy::kSingle:
      break;
    case Strategy::kGreedy:
      if (sel.k > 1) {
        if (cfg.collapse_equivalent) {
          auto collapsed = CollapseEquivalent(rs, priced);
          return SelectGreedyPe(rs, collapsed, budget, sel);
        }
        return SelectGreedyPe(rs, priced, budget, sel);
      }
      break;
  }
  auto pick = SelectSingle(rs, priced, budget);
  return pick ? QuestionSet({*pick}) : QuestionSet();
}

}  // namespace

Metrics ComputeMetrics(const Partition& reported, std::span<const MatchPair> truth) {
  if (truth.empty()) throw Error(ErrorCode::kEmptyTruth, "no ground-truth pairs");
  std::vector<MatchPair> sorted_truth(truth.begin(), truth.end());
  std::sort(sorted_truth.begin(), sorted_truth.end());
  sorted_truth.erase(std::unique(sorted_truth.begin(), sorted_truth.end()),
                     sorted_truth.end());
  const auto& reported_pairs = reported.pairs();
  std::size_t common = 0;
  for (const MatchPair& m : reported_pairs) {
    common += std::binary_search(sorted_truth.begin(), sorted_truth.end(), m) ? 1 : 0;
  }
  Metrics out;
  if (reported_pairs.empty()) {
    out.precision = 1.0;
    out.precision_flagged = true;
  } else {
    out.precision = static_cast<double>(common) / static_cast<double>(reported_pairs.size());
  }
  out.recall = static_cast<double>(common) / static_cast<double>(sorted_truth.size());
  return out;
}

Metrics ComputeMetrics(const ResultSet& rs, std::span<const MatchPair> truth) {
  if (rs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty result set");
  return ComputeMetrics(rs.partitions()[rs.ArgMax()], truth);
}

std::string_view StopReasonName(StopReason r) {
  switch (r) {
    case StopReason::kEntropyFloor: return "entropy_floor";
    case StopReason::kBudgetExhausted: return "budget_exhausted";
    case StopReason::kPoolEmpty: return "pool_empty";
    case StopReason::kNoGain: return "no_gain";
    case StopReason::kMaxIterations: return "max_iterations";
  }
  return "unknown";
}

RunInputs PrepareInputs(const RunConfig& cfg) {
  RunInputs in;
  if (!cfg.records_path.empty()) {
    LoadedData data = LoadDataset(cfg.records_path, cfg.truth_path);
    in.records = std::move(data.records);
    in.truth = std::move(data.truth.pairs);
    in.has_truth = !cfg.truth_path.empty();
  } else {
    SynthCorpus corpus = SynthGenerate(cfg.synth.entities, cfg.synth.dup_rate,
                                       cfg.synth.perturb, DeriveSeed(cfg.seed, "synth"));
    in.records = std::move(corpus.records);
    in.truth = std::move(corpus.truth);
    in.has_truth = true;
  }
  return in;
}

std::unique_ptr<Oracle> MakeOracle(const RunConfig& cfg,
                                   std::span<const MatchPair> truth) {
  if (cfg.oracle == OracleKind::kLlm) {
    return std::make_unique<LlmOracle>(cfg.llm, cfg.cost);
  }
  SimulatedOracleSpec spec;
  spec.truth.assign(truth.begin(), truth.end());
  spec.theta = cfg.oracle_theta;
  spec.seed = DeriveSeed(cfg.seed, "oracle");
  return std::make_unique<SimulatedOracle>(std::move(spec), cfg.cost);
}

std::vector<LabeledPair> SampleLabeledPairs(const Dataset& records,
                                            std::span<const MatchPair> truth,
                                            std::size_t n, std::uint64_t seed) {
  std::set<MatchPair> truth_set(truth.begin(), truth.end());
  std::vector<MatchPair> positives(truth_set.begin(), truth_set.end());
  std::uint64_t state = SplitMix64(seed);
  auto next = [&state]() { return SplitMix64(state++); };
  for (std::size_t i = positives.size(); i > 1; --i) {
    std::swap(positives[i - 1], positives[next() % i]);
  }

  std::vector<LabeledPair> out;
  std::set<MatchPair> used;
  const std::size_t want_pos = std::min(positives.size(), n / 2);
  for (std::size_t i = 0; i < want_pos; ++i) {
    out.push_back({positives[i], Verdict::kYes});
    used.insert(positives[i]);
  }
  const std::size_t m = records.size();
  const std::size_t all_pairs = m < 2 ? 0 : m * (m - 1) / 2;
  const std::size_t negatives_available = all_pairs - truth_set.size();
  std::size_t want_neg = std::min(n - out.size(), negatives_available);
  while (want_neg > 0) {
    std::size_t i = next() % m, j = next() % m;
    if (i == j) continue;
    MatchPair p(records.records()[i].id, records.records()[j].id);
    if (truth_set.count(p) || !used.insert(p).second) continue;
    out.push_back({p, Verdict::kNo});
    --want_neg;
  }
  return out;
}

RunResult RunLoop(const RunConfig& cfg, const Dataset& records,
                  std::span<const MatchPair> truth, Oracle& oracle,
                  double update_theta) {
  cfg.Validate();
  RunResult result;
  result.update_theta = update_theta;
  result.initial =
      SweepResultSet(records, cfg.sim, cfg.init, DeriveSeed(cfg.seed, "init"));
  ResultSet rs = result.initial;
  BudgetState budget(cfg.budget);
  const std::uint64_t select_seed = DeriveSeed(cfg.seed, "select");
  result.logs.push_back(Snapshot(0, rs, truth, 0));

  std::size_t iteration = 0;
  try {
    while (true) {
      if (ResultEntropy(rs) <= cfg.entropy_floor) {
        result.stop = StopReason::kEntropyFloor;
        break;
      }
      if (iteration >= cfg.max_iterations) {
        result.stop = StopReason::kMaxIterations;
        break;
      }
      auto pool = CandidatePool(rs);
      if (pool.empty()) {
        result.stop = StopReason::kPoolEmpty;
        break;
      }
      auto priced = PricePool(pool, records, cfg.cost);
      QuestionSet q = Choose(cfg, rs, priced, budget, SplitMix64(select_seed + iteration));
      if (q.empty()) {
        bool affordable = std::any_of(priced.begin(), priced.end(), [&](const PricedPair& p) {
          return budget.CanAfford(p.cost);
        });
        result.stop = affordable ? StopReason::kNoGain : StopReason::kBudgetExhausted;
        break;
      }

      std::vector<OracleAnswer> answers;
      try {
        answers = oracle.Ask(q, records);
      } catch (const OracleError& e) {
        budget.Charge(e.charged_tokens());
        throw;
      }
      Tokens step = 0;
      for (const OracleAnswer& a : answers) step += a.billed();
      budget.Charge(step);

      std::vector<Evidence> evidence;
      evidence.reserve(answers.size());
      for (const OracleAnswer& a : answers) evidence.push_back({a, update_theta});
      rs = PosteriorBatch(rs, evidence);

      std::size_t repairs = 0;
      for (const OracleAnswer& a : answers) {
        if (a.verdict != Verdict::kNo) continue;
        if (PairProb(rs, a.pair) <= cfg.repair_rho) continue;
        RepairOutcome fixed = Repair(rs, a.pair);
        if (fixed.touched > 0) ++repairs;
        rs = std::move(fixed.result);
      }

      ++iteration;
      IterationLog log = Snapshot(iteration, rs, truth, budget.spent());
      log.answers = std::move(answers);
      log.step_tokens = step;
      log.repairs = repairs;
      result.logs.push_back(std::move(log));
    }
  } catch (const Error& e) {
    result.final_result = rs;
    result.budget_overrun = budget.overrun();
    throw RunAborted(e, std::move(result));
  }
  result.final_result = rs;
  result.budget_overrun = budget.overrun();
  return result;
}

RunResult RunLoop(const RunConfig& cfg) {
  cfg.Validate();
  RunInputs in = PrepareInputs(cfg);
  std::span<const MatchPair> metric_truth;
  if (in.has_truth) metric_truth = in.truth;

  double theta = ResolvedUpdateTheta(cfg);
  if (cfg.estimate_theta) {
    if (in.truth.empty()) {
      throw Error(ErrorCode::kConfigError, "update_theta = estimate needs ground truth");
    }
    RunConfig probe_cfg = cfg;
    probe_cfg.seed = DeriveSeed(cfg.seed, "probe");
    auto probe_oracle = MakeOracle(probe_cfg, in.truth);
    auto labeled = SampleLabeledPairs(in.records, in.truth, cfg.probe_pairs,
                                      DeriveSeed(cfg.seed, "probe-sample"));
    theta = EstimateCapability(labeled, *probe_oracle, in.records, cfg.theta_epsilon);
  }
  auto oracle = MakeOracle(cfg, in.truth);
  return RunLoop(cfg, in.records, metric_truth, *oracle, theta);
}

double EntropyAtSpend(std::span<const IterationLog> logs, Tokens spend) {
  if (logs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty logs");
  double h = logs.front().entropy_bits;
  for (const IterationLog& log : logs) {
    if (log.cumulative_tokens > spend) break;
    h = log.entropy_bits;
  }
  return h;
}

std::string FormatCurve(std::span<const IterationLog> logs) {
  std::string out(kCurveHeader);
  out += '\n';
  for (const IterationLog& log : logs) {
    out += std::to_string(log.iteration) + "," + std::to_string(log.cumulative_tokens) +
           "," + Fixed(log.entropy_bits, 6) + ",";
    if (log.metrics) {
      out += Fixed(log.metrics->precision, 6) + "," + Fixed(log.metrics->recall, 6);
    } else {
      out += ",";
    }
    out += "," + std::to_string(log.answers.size()) + "," +
           CsvEscape(log.top_partition) + "\n";
  }
  return out;
}

void EmitCurve(std::span<const IterationLog> logs, const std::string& path) {
  if (logs.empty()) throw Error(ErrorCode::kInvalidArgument, "no iterations to emit");
  WriteFile(path, FormatCurve(logs));
}

std::string FormatAnswers(std::span<const IterationLog> logs) {
  std::string out = "iteration,left,right,verdict,tokens_in,tokens_out\n";
  for (const IterationLog& log : logs) {
    for (const OracleAnswer& a : log.answers) {
      out += std::to_string(log.iteration) + "," + CsvEscape(a.pair.left()) + "," +
             CsvEscape(a.pair.right()) + "," + VerdictChar(a.verdict) + "," +
             std::to_string(a.tokens_in) + "," + std::to_string(a.tokens_out) + "\n";
    }
  }
  return out;
}

std::string FormatManifest(const RunConfig& cfg) {
  std::string out = "# erefine run manifest\n";
  for (const char* label : {"synth", "init", "select", "oracle", "probe"}) {
    out += "# seed." + std::string(label) + " = " +
           std::to_string(DeriveSeed(cfg.seed, label)) + "\n";
  }
  out += FormatConfig(ConfigToMap(cfg));
  return out;
}

std::string FormatResultSet(const ResultSet& rs) {
  json parts = json::array();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Partition& p = rs.partitions()[i];
    json edges = json::array();
    for (const MatchPair& e : p.evidence_edges()) edges.push_back({e.left(), e.right()});
    parts.push_back({{"encoding", p.encoding()},
                     {"probability", rs.probs()[i]},
                     {"clusters", p.clusters()},
                     {"evidence", edges}});
  }
  json doc = {{"entropy_bits", ResultEntropy(rs)}, {"partitions", parts}};
  return doc.dump(2) + "\n";
}

ResultSet ParseResultSet(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!doc.is_object() || !doc.contains("partitions") || !doc["partitions"].is_array()) {
    throw Error(ErrorCode::kParseError, "result set: missing partitions array");
  }
  std::vector<Partition> partitions;
  std::vector<double> probs;
  std::size_t index = 0;
  try {
    for (const json& entry : doc["partitions"]) {
      auto clusters = entry.at("clusters").get<std::vector<std::vector<std::string>>>();
      Partition from_clusters = Partition::FromClusters(clusters);
      Partition p = from_clusters;
      if (entry.contains("evidence")) {
        std::vector<MatchPair> edges;
        for (const auto& e : entry["evidence"]) {
          edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        }
        p = Partition::FromEdges(std::move(edges));
        if (p.encoding() != from_clusters.encoding()) {
          throw Error(ErrorCode::kParseError,
                      "partition " + std::to_string(index) +
                          ": evidence components differ from clusters");
        }
      }
      partitions.push_back(std::move(p));
      probs.push_back(entry.at("probability").get<double>());
      ++index;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError,
                "partition " + std::to_string(index) + ": " + e.what());
  }
  return NormalizeAndDedup(ResultSet(std::move(partitions), std::move(probs)));
}

void WriteRunOutputs(const RunConfig& cfg, const RunResult& result) {
  namespace fs = std::filesystem;
  if (cfg.out_dir.empty()) throw Error(ErrorCode::kIoError, "no output directory");
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  EmitCurve(result.logs, (dir / "curve.csv").string());
  WriteFile((dir / "answers.csv").string(), FormatAnswers(result.logs));
  WriteFile((dir / "manifest.cfg").string(), FormatManifest(cfg));
  WriteFile((dir / "result.json").string(), FormatResultSet(result.final_result));
}

std::vector<BenchRow> RunBench(const RunConfig& base,
                               std::span<const std::uint64_t> seeds) {
  std::vector<BenchRow> rows;
  for (std::uint64_t seed : seeds) {
    RunConfig cfg = base;
    cfg.seed = seed;
    RunInputs in = PrepareInputs(cfg);
    std::span<const MatchPair> metric_truth;
    if (in.has_truth) metric_truth = in.truth;
    for (Strategy s : {Strategy::kGreedy, Strategy::kRandom}) {
      cfg.selection.strategy = s;
      auto oracle = MakeOracle(cfg, in.truth);
      rows.push_back({seed, s,
                      RunLoop(cfg, in.records, metric_truth, *oracle,
                              ResolvedUpdateTheta(cfg))});
    }
  }
  return rows;
}

std::vector<double> AverageCurve(std::span<const BenchRow> rows, Strategy strategy,
                                 Tokens step, Tokens limit) {
  if (step <= 0) throw Error(ErrorCode::kInvalidArgument, "step must be > 0");
  std::vector<double> sum;
  std::size_t count = 0;
  for (const BenchRow& row : rows) {
    if (row.strategy != strategy) continue;
    ++count;
    std::size_t g = 0;
    for (Tokens spend = 0; spend <= limit; spend += step, ++g) {
      if (sum.size() <= g) sum.push_back(0.0);
      sum[g] += EntropyAtSpend(row.result.logs, spend);
    }
  }
  if (count == 0) return {};
  for (double& x : sum) x /= static_cast<double>(count);
  return sum;
}

}  // namespace erefine
