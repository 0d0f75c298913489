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


// Delimited-text ingestion of records and ground-truth pairs.

#ifndef EREFINE_DATASET_IO_H_
#define EREFINE_DATASET_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "erefine/core.h"

namespace erefine {

struct CsvField {
  std::string text;
  bool quoted = false;
};
using CsvRow = std::vector<CsvField>;

// RFC 4180 style: quoted fields may hold delimiters, newlines and doubled
// quotes. Throws kParseError with row/column on malformed quoting.
std::vector<CsvRow> ParseCsv(std::string_view text, char delimiter = ',');

// Quotes when the value holds the delimiter, a quote or a line break.
std::string CsvEscape(std::string_view value, char delimiter = ',');

// Header row: id column followed by attribute names. Empty cells are absent
// values. Throws kParseError on ragged rows, kInvalidArgument on bad ids.
Dataset ParseDataset(std::string_view text, char delimiter = ',');

struct TruthSet {
  std::vector<MatchPair> pairs;  // sorted, closed under transitivity
  std::size_t added_by_closure = 0;
};

// Header row then two id columns per row. Throws kDanglingId when an id is
// not in `records` (skipped when records is null) and kParseError otherwise.
TruthSet ParseTruth(std::string_view text, const Dataset* records,
                    char delimiter = ',');

// All within-cluster pairs of the transitive closure of `pairs`.
TruthSet CloseTruth(std::vector<MatchPair> pairs);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

// Tab-delimited when the path ends in .tsv, comma otherwise.
char DelimiterFor(const std::string& path);

struct LoadedData {
  Dataset records;
  TruthSet truth;
};

LoadedData LoadDataset(const std::string& records_path,
                       const std::string& truth_path);

std::string FormatDataset(const Dataset& records);
std::string FormatTruth(const std::vector<MatchPair>& truth);

}  // namespace erefine

#endif  // EREFINE_DATASET_IO_H_
