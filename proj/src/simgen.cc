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


#include "erefine/simgen.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

#include <boost/math/distributions/normal.hpp>

#include "erefine/error.h"

namespace erefine {

std::optional<SimilarityKind> ParseSimilarityKind(std::string_view name) {
  if (name == "levenshtein") return SimilarityKind::kLevenshtein;
  if (name == "jaro") return SimilarityKind::kJaro;
  if (name == "jaccard") return SimilarityKind::kJaccard;
  return std::nullopt;
}

std::string_view SimilarityKindName(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kLevenshtein: return "levenshtein";
    case SimilarityKind::kJaro: return "jaro";
    case SimilarityKind::kJaccard: return "jaccard";
  }
  return "levenshtein";
}

std::optional<InitMode> ParseInitMode(std::string_view name) {
  if (name == "uniform") return InitMode::kUniform;
  if (name == "gaussian") return InitMode::kGaussian;
  if (name == "gaussian-sampled") return InitMode::kGaussianSampled;
  return std::nullopt;
}

std::string_view InitModeName(InitMode mode) {
  switch (mode) {
    case InitMode::kUniform: return "uniform";
    case InitMode::kGaussian: return "gaussian";
    case InitMode::kGaussianSampled: return "gaussian-sampled";
  }
  return "uniform";
}

std::optional<MissingValuePolicy> ParseMissingValuePolicy(std::string_view name) {
  if (name == "skip") return MissingValuePolicy::kSkipAttribute;
  if (name == "mismatch") return MissingValuePolicy::kTreatAsMismatch;
  return std::nullopt;
}

std::string_view MissingValuePolicyName(MissingValuePolicy policy) {
  return policy == MissingValuePolicy::kSkipAttribute ? "skip" : "mismatch";
}

std::vector<double> DefaultThresholds() {
  // i / 20 keeps each value the correctly rounded double of its decimal.
  std::vector<double> out;
  for (int i = 10; i <= 19; ++i) out.push_back(i / 20.0);
  return out;
}

void SimConfig::Validate() const {
  if (thresholds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one threshold required");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    double t = thresholds[i];
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "threshold outside [0,1]");
    }
    if (i > 0 && !(t > thresholds[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "thresholds must be strictly increasing");
    }
  }
}

SimilarityKind SimConfig::KindFor(const std::string& attribute) const {
  auto it = per_attribute.find(attribute);
  return it == per_attribute.end() ? default_kind : it->second;
}

double LevenshteinSimilarity(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (a.empty()) return 1.0;
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return 1.0 - static_cast<double>(row[b.size()]) / static_cast<double>(a.size());
}

double JaroSimilarity(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  // Greedy window matching can depend on argument order; fix one.
  if (std::pair(a.size(), a) > std::pair(b.size(), b)) std::swap(a, b);
  const std::size_t longest = std::max(a.size(), b.size());
  const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;

  std::vector<bool> a_matched(a.size()), b_matched(b.size());
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (b_matched[j] || a[i] != b[j]) continue;
      a_matched[i] = b_matched[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;

  std::size_t half_transpositions = 0;
  for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[j]) ++j;
    if (a[i] != b[j]) ++half_transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions) / 2.0;
  return (m / a.size() + m / b.size() + (m - t) / m) / 3.0;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double JaccardSimilarity(std::string_view a, std::string_view b) {
  auto ta = Tokenize(a), tb = Tokenize(b);
  std::set<std::string> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.count(t);
  return static_cast<double>(common) /
         static_cast<double>(sa.size() + sb.size() - common);
}

std::optional<double> Similarity(const AttributeValue& a, const AttributeValue& b,
                                 SimilarityKind kind, MissingValuePolicy policy) {
  if (!a.has_value() || !b.has_value()) {
    if (policy == MissingValuePolicy::kSkipAttribute) return std::nullopt;
    return 0.0;
  }
  switch (kind) {
    case SimilarityKind::kLevenshtein: return LevenshteinSimilarity(*a, *b);
    case SimilarityKind::kJaro: return JaroSimilarity(*a, *b);
    case SimilarityKind::kJaccard: return JaccardSimilarity(*a, *b);
  }
  return 0.0;
}

PairSimilarityTable::PairSimilarityTable(const Dataset& records,
                                         const SimConfig& cfg)
    : records_(&records) {
  const auto& names = records.attribute_names();
  if (names.empty()) {
    throw Error(ErrorCode::kEmptyAttributeSchema, "records have no attributes");
  }
  std::vector<SimilarityKind> kinds;
  for (const auto& name : names) kinds.push_back(cfg.KindFor(name));

  const auto& rows = records.records();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      double lowest = 1.0;
      bool compared = false;
      for (std::size_t e = 0; e < names.size() && lowest > 0.0; ++e) {
        auto s = Similarity(rows[i].values[e], rows[j].values[e], kinds[e],
                            cfg.missing);
        if (!s) continue;
        compared = true;
        lowest = std::min(lowest, *s);
      }
      // A pair with nothing to compare never matches.
      if (compared) entries_.push_back({i, j, lowest});
    }
  }
}

std::vector<MatchPair> PairSimilarityTable::EdgesAt(double threshold) const {
  std::vector<MatchPair> edges;
  const auto& rows = records_->records();
  for (const Entry& e : entries_) {
    if (e.min_similarity >= threshold) {
      edges.emplace_back(rows[e.i].id, rows[e.j].id);
    }
  }
  return edges;
}

Partition GeneratePartition(const Dataset& records, double threshold,
                            const SimConfig& cfg) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold outside [0,1]");
  }
  return Partition::FromEdges(PairSimilarityTable(records, cfg).EdgesAt(threshold));
}

std::vector<double> InitDistribution(std::size_t n, InitMode mode,
                                     std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  std::vector<double> w(n, 1.0);
  switch (mode) {
    case InitMode::kUniform:
      break;
    case InitMode::kGaussian: {
      const boost::math::normal_distribution<double> normal;
      for (std::size_t i = 0; i < n; ++i) {
        double q = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        w[i] = boost::math::pdf(normal, boost::math::quantile(normal, q));
      }
      // Mirror so that floating error cannot break symmetry.
      for (std::size_t i = 0; i < n / 2; ++i) w[n - 1 - i] = w[i];
      break;
    }
    case InitMode::kGaussianSampled: {
      constexpr double kShift = 1e-3;
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> normal;
      for (double& x : w) x = normal(rng);
      std::sort(w.begin(), w.end());
      const double lowest = w.front();
      for (double& x : w) x = x - lowest + kShift;
      break;
    }
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

ResultSet SweepResultSet(const Dataset& records, const SimConfig& cfg,
                         InitMode init, std::uint64_t seed) {
  cfg.Validate();
  PairSimilarityTable table(records, cfg);
  std::vector<Partition> partitions;
  partitions.reserve(cfg.thresholds.size());
  for (double t : cfg.thresholds) {
    partitions.push_back(Partition::FromEdges(table.EdgesAt(t)));
  }
  auto weights = InitDistribution(partitions.size(), init, seed);
  return NormalizeAndDedup(ResultSet(std::move(partitions), std::move(weights)));
}

}  // namespace erefine
