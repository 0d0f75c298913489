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


// Command-line front end: sweep, run, eval, probe, synth, bench.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erefine/config.h"
#include "erefine/dataset_io.h"
#include "erefine/entropy.h"
#include "erefine/pipeline.h"
#include "erefine/rng.h"
#include "erefine/simgen.h"
#include "erefine/synth.h"

namespace {

using namespace erefine;

// Flag values keyed by config key; only flags the user passed are applied.
struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;

  void Bind(CLI::App* app, const std::string& flag, const std::string& key,
            const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }

  RunConfig Resolve() const {
    ConfigMap map;
    if (!config_path.empty()) map = ParseConfigText(ReadFile(config_path));
    for (const auto& [k, v] : values) map[k] = v;
    return ConfigFromMap(map);
  }
};

void BindCommon(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path, "Config file (key = value)");
  o.Bind(app, "--records", "records", "Records CSV/TSV");
  o.Bind(app, "--truth", "truth", "Ground-truth pairs CSV/TSV");
  o.Bind(app, "--budget", "budget", "Token budget");
  o.Bind(app, "--k", "k", "Questions per iteration");
  o.Bind(app, "--d", "d", "Partial enumeration depth");
  o.Bind(app, "--strategy", "strategy", "single | greedy | random");
  o.Bind(app, "--theta", "theta", "Simulated oracle accuracy");
  o.Bind(app, "--oracle", "oracle", "simulated | llm");
  o.Bind(app, "--init", "init", "uniform | gaussian | gaussian-sampled");
  o.Bind(app, "--thresholds", "thresholds", "Comma-separated thresholds");
  o.Bind(app, "--seed", "seed", "Master seed");
  o.Bind(app, "--out", "out", "Output directory");
}

void PrintMetrics(const Metrics& m) {
  std::printf("precision %.6f%s\nrecall %.6f\n", m.precision,
              m.precision_flagged ? " (no reported pairs)" : "", m.recall);
}

int CmdSweep(const Overrides& o) {
  RunConfig cfg = o.Resolve();
  RunInputs in = PrepareInputs(cfg);
  ResultSet rs = SweepResultSet(in.records, cfg.sim, cfg.init, DeriveSeed(cfg.seed, "init"));
  std::string doc = FormatResultSet(rs);
  if (cfg.out_dir.empty()) {
    std::cout << doc;
  } else {
    std::filesystem::create_directories(cfg.out_dir);
    WriteFile((std::filesystem::path(cfg.out_dir) / "result.json").string(), doc);
  }
  return 0;
}

int CmdRun(const Overrides& o) {
  RunConfig cfg = o.Resolve();
  RunResult result;
  int status = 0;
  try {
    result = RunLoop(cfg);
  } catch (const RunAborted& e) {
    std::fprintf(stderr, "run aborted: %s\n", e.what());
    result = e.partial();
    status = 3;
  }
  if (!cfg.out_dir.empty()) {
    WriteRunOutputs(cfg, result);
  } else {
    std::cout << FormatCurve(result.logs);
  }
  const IterationLog& last = result.logs.back();
  std::fprintf(stderr, "stop %s, iterations %zu, tokens %lld, entropy %.6f\n",
               std::string(StopReasonName(result.stop)).c_str(), last.iteration,
               static_cast<long long>(last.cumulative_tokens), last.entropy_bits);
  return status;
}

int CmdEval(const std::string& result_path, const Overrides& o) {
  RunConfig cfg = o.Resolve();
  if (cfg.truth_path.empty()) throw Error(ErrorCode::kConfigError, "eval needs --truth");
  ResultSet rs = ParseResultSet(ReadFile(result_path));
  TruthSet truth = ParseTruth(ReadFile(cfg.truth_path), nullptr,
                              DelimiterFor(cfg.truth_path));
  std::printf("partitions %zu\nentropy_bits %.6f\n", rs.size(), ResultEntropy(rs));
  PrintMetrics(ComputeMetrics(rs, truth.pairs));
  return 0;
}

int CmdProbe(const Overrides& o) {
  RunConfig cfg = o.Resolve();
  RunInputs in = PrepareInputs(cfg);
  if (in.truth.empty()) throw Error(ErrorCode::kEmptyTruth, "probe needs ground truth");
  RunConfig probe_cfg = cfg;
  probe_cfg.seed = DeriveSeed(cfg.seed, "probe");
  auto oracle = MakeOracle(probe_cfg, in.truth);
  auto labeled = SampleLabeledPairs(in.records, in.truth, cfg.probe_pairs,
                                    DeriveSeed(cfg.seed, "probe-sample"));
  double theta = EstimateCapability(labeled, *oracle, in.records, cfg.theta_epsilon);
  std::printf("probed %zu pairs\ntheta %.6f\n", labeled.size(), theta);
  return 0;
}

int CmdSynth(const Overrides& o) {
  RunConfig cfg = o.Resolve();
  if (cfg.out_dir.empty()) throw Error(ErrorCode::kConfigError, "synth needs --out");
  SynthCorpus corpus = SynthGenerate(cfg.synth.entities, cfg.synth.dup_rate,
                                     cfg.synth.perturb, DeriveSeed(cfg.seed, "synth"));
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  WriteFile((dir / "records.csv").string(), FormatDataset(corpus.records));
  WriteFile((dir / "truth.csv").string(), FormatTruth(corpus.truth));
  std::printf("records %zu\ntruth_pairs %zu\n", corpus.records.size(), corpus.truth.size());
  return 0;
}

int CmdBench(const Overrides& o, std::size_t n_seeds, Tokens step) {
  RunConfig cfg = o.Resolve();
  std::vector<std::uint64_t> seeds(n_seeds);
  std::iota(seeds.begin(), seeds.end(), cfg.seed);
  auto rows = RunBench(cfg, seeds);
  auto greedy = AverageCurve(rows, Strategy::kGreedy, step, cfg.budget);
  auto random = AverageCurve(rows, Strategy::kRandom, step, cfg.budget);
  std::printf("tokens,greedy_entropy,random_entropy\n");
  for (std::size_t i = 0; i < greedy.size(); ++i) {
    std::printf("%lld,%.6f,%.6f\n", static_cast<long long>(i * step), greedy[i], random[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted entity-resolution refinement"};
  app.require_subcommand(1);

  Overrides sweep_o, run_o, eval_o, probe_o, synth_o, bench_o;
  auto* sweep = app.add_subcommand("sweep", "Build the initial result set");
  BindCommon(sweep, sweep_o);
  auto* run = app.add_subcommand("run", "Run the refinement loop");
  BindCommon(run, run_o);
  auto* eval = app.add_subcommand("eval", "Score a result set against truth");
  std::string result_path;
  eval->add_option("--result", result_path, "result.json")->required();
  BindCommon(eval, eval_o);
  auto* probe = app.add_subcommand("probe", "Estimate oracle capability");
  BindCommon(probe, probe_o);
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  BindCommon(synth, synth_o);
  auto* bench = app.add_subcommand("bench", "Greedy vs random over seeds");
  std::size_t n_seeds = 20;
  Tokens step = 100;
  bench->add_option("--seeds", n_seeds, "Number of seeds");
  bench->add_option("--step", step, "Curve grid step in tokens");
  BindCommon(bench, bench_o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*sweep) return CmdSweep(sweep_o);
    if (*run) return CmdRun(run_o);
    if (*eval) return CmdEval(result_path, eval_o);
    if (*probe) return CmdProbe(probe_o);
    if (*synth) return CmdSynth(synth_o);
    if (*bench) return CmdBench(bench_o, n_seeds, step);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
