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


// End-to-end refinement loop: sweep, select, ask, update, repair, log.

#ifndef EREFINE_PIPELINE_H_
#define EREFINE_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erefine/config.h"
#include "erefine/core.h"
#include "erefine/oracle.h"

namespace erefine {

struct Metrics {
  double precision = 1.0;
  double recall = 0.0;
  // Set when the reported pair set was empty and precision defaulted to 1.
  bool precision_flagged = false;
};

// Precision and recall of `reported` against `truth`. Throws kEmptyTruth.
Metrics ComputeMetrics(const Partition& reported, std::span<const MatchPair> truth);
// Evaluated on the most probable partition.
Metrics ComputeMetrics(const ResultSet& rs, std::span<const MatchPair> truth);

struct IterationLog {
  std::size_t iteration = 0;
  std::vector<OracleAnswer> answers;
  Tokens step_tokens = 0;
  Tokens cumulative_tokens = 0;
  double entropy_bits = 0.0;
  std::optional<Metrics> metrics;
  std::string top_partition;
  std::size_t repairs = 0;
};

enum class StopReason {
  kEntropyFloor,
  kBudgetExhausted,
  kPoolEmpty,
  kNoGain,
  kMaxIterations,
};
std::string_view StopReasonName(StopReason r);

struct RunResult {
  // Row 0 is the initial state before any question.
  std::vector<IterationLog> logs;
  ResultSet initial;
  ResultSet final_result;
  StopReason stop = StopReason::kMaxIterations;
  double update_theta = 0.0;
  Tokens budget_overrun = 0;
};

// Carries the iterations completed before the failure.
class RunAborted : public Error {
 public:
  RunAborted(const Error& cause, RunResult partial)
      : Error(cause.code(), cause.what()), partial_(std::move(partial)) {}
  const RunResult& partial() const { return partial_; }

 private:
  RunResult partial_;
};

struct RunInputs {
  Dataset records;
  std::vector<MatchPair> truth;
  bool has_truth = false;
};

// Loads the configured files, or generates the synthetic corpus.
RunInputs PrepareInputs(const RunConfig& cfg);

// The oracle the config names; the simulated one answers from `truth`.
std::unique_ptr<Oracle> MakeOracle(const RunConfig& cfg,
                                   std::span<const MatchPair> truth);

// Half truth pairs, half non-duplicate pairs, seeded.
std::vector<LabeledPair> SampleLabeledPairs(const Dataset& records,
                                            std::span<const MatchPair> truth,
                                            std::size_t n, std::uint64_t seed);

// Runs until the budget, the entropy floor, the candidate pool or the
// iteration cap stops it. Deterministic for a deterministic oracle. An empty
// `truth` disables metrics. Throws RunAborted.
RunResult RunLoop(const RunConfig& cfg, const Dataset& records,
                  std::span<const MatchPair> truth, Oracle& oracle,
                  double update_theta);

// PrepareInputs + MakeOracle (+ capability probe when configured) + RunLoop.
RunResult RunLoop(const RunConfig& cfg);

// Entropy after the last iteration whose cumulative spend is <= spend.
double EntropyAtSpend(std::span<const IterationLog> logs, Tokens spend);

inline constexpr std::string_view kCurveHeader =
    "iteration,cumulative_tokens,entropy_bits,precision,recall,questions_asked,"
    "top_partition";

std::string FormatCurve(std::span<const IterationLog> logs);
// Throws kInvalidArgument for empty logs and kIoError on write failure.
void EmitCurve(std::span<const IterationLog> logs, const std::string& path);

std::string FormatAnswers(std::span<const IterationLog> logs);

// Resolved config plus the derived sub-seeds as comments; feeding it back
// through --config reproduces the run.
std::string FormatManifest(const RunConfig& cfg);

std::string FormatResultSet(const ResultSet& rs);
// Throws kParseError.
ResultSet ParseResultSet(std::string_view text);

// curve.csv, answers.csv, manifest.cfg, result.json under cfg.out_dir.
void WriteRunOutputs(const RunConfig& cfg, const RunResult& result);

struct BenchRow {
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::kGreedy;
  RunResult result;
};

// For every seed runs `base` with the greedy and the random strategy on the
// same corpus and oracle seed.
std::vector<BenchRow> RunBench(const RunConfig& base,
                               std::span<const std::uint64_t> seeds);

// Seed-averaged EntropyAtSpend over rows of one strategy, at 0, step, ...
// up to limit.
std::vector<double> AverageCurve(std::span<const BenchRow> rows, Strategy strategy,
                                 Tokens step, Tokens limit);

}  // namespace erefine

#endif  // EREFINE_PIPELINE_H_
