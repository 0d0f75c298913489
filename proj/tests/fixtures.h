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


// Shared fixtures: the eleven-record example and its four-partition prior.

#ifndef EREFINE_TESTS_FIXTURES_H_
#define EREFINE_TESTS_FIXTURES_H_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "erefine/core.h"
#include "erefine/error.h"

namespace erefine::testing {

inline Dataset ExampleRecords() {
  auto row = [](std::string id, std::vector<std::string> v) {
    Record r;
    r.id = std::move(id);
    for (auto& s : v) r.values.emplace_back(std::move(s));
    return r;
  };
  return Dataset(
      {"Name", "Email", "Title", "Company", "Location"},
      {
          row("r1", {"John Doe", "johndoe@email.com", "Software Engineer", "TechCorp", "San Francisco"}),
          row("r2", {"Andy Doe", "andydoe@email.com", "Software Engineer", "TechCorp LLC", "SF, CA"}),
          row("r3", {"Jane Smith", "janesmith@email.com", "Project Manager", "Innovate Tech", "New York"}),
          row("r4", {"Jane S.", "janes@email.com", "PM", "Innovate Tech", "New York"}),
          row("r5", {"David Doe", "davidd@email.com", "Developer", "TechCorp", "SF"}),
          row("r6", {"J. Smith", "janesmith@email.com", "Proj Manager", "Innovate Tech", "New York, NY"}),
          row("r7", {"John D.", "johndoe@email.com", "Software Eng.", "TechCorp", "San Fran"}),
          row("r8", {"Jane A. Smith", "janesmith@email.com", "Project Mgr", "Innovate", "NYC"}),
          row("r9", {"Jonathan Doe", "johndoe2@email.com", "Software Engineer", "TechCorp", "San Francisco"}),
          row("r10", {"Andy Smith", "andysmith@email.com", "Manager", "Innovate Tech", "New York, NY"}),
          row("r11", {"David D.", "david@email.com", "Developer", "TechCorp", "San Francisco"}),
      });
}

inline ResultSet ExamplePrior() {
  return ResultSet(
      {
          Partition::FromClusters({{"r1", "r7"}, {"r3", "r4"}}),
          Partition::FromClusters({{"r1", "r7", "r9"}, {"r3", "r4"}}),
          Partition::FromClusters({{"r1", "r7", "r9"}, {"r3", "r4", "r8"}, {"r5", "r11"}}),
          Partition::FromClusters(
              {{"r1", "r2", "r7", "r9"}, {"r3", "r4", "r6", "r8", "r10"}, {"r5", "r11"}}),
      },
      {0.10, 0.26, 0.36, 0.28});
}

inline MatchPair P(const char* a, const char* b) { return MatchPair(a, b); }

// Plain -sum p log2 p, written out for cross-checking.
inline double RefEntropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

// A random result set over `n_records` records: every partition comes from
// a random edge subset of a small record graph.
inline ResultSet RandomResultSet(std::mt19937_64& rng, std::size_t n_records,
                                 std::size_t n_partitions) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n_records; ++i) ids.push_back("x" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, n_records - 1);
  std::uniform_int_distribution<int> n_edges(0, static_cast<int>(n_records));
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  std::vector<Partition> parts;
  std::vector<double> probs;
  for (std::size_t k = 0; k < n_partitions; ++k) {
    std::vector<MatchPair> edges;
    int m = n_edges(rng);
    for (int e = 0; e < m; ++e) {
      std::size_t a = pick(rng), b = pick(rng);
      if (a != b) edges.emplace_back(ids[a], ids[b]);
    }
    parts.push_back(Partition::FromEdges(std::move(edges)));
    probs.push_back(weight(rng));
  }
  return NormalizeAndDedup(ResultSet(std::move(parts), std::move(probs)));
}

}  // namespace erefine::testing

#endif  // EREFINE_TESTS_FIXTURES_H_
