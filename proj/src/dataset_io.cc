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


#include "erefine/dataset_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "erefine/error.h"

namespace erefine {

std::vector<CsvRow> ParseCsv(std::string_view text, char delimiter) {
  std::vector<CsvRow> rows;
  CsvRow row;
  CsvField field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1, column = 1;

  auto end_field = [&]() {
    row.push_back(std::move(field));
    field = CsvField{};
    field_started = false;
  };
  auto end_row = [&]() {
    end_field();
    bool blank = row.size() == 1 && row[0].text.empty() && !row[0].quoted;
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.text += c;
      }
    } else if (c == '"') {
      if (field_started) {
        throw Error(ErrorCode::kParseError,
                    "row " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": stray quote");
      }
      in_quotes = true;
      field.quoted = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
      ++column;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_row();
      ++line;
      column = 1;
    } else {
      if (field.quoted) {
        throw Error(ErrorCode::kParseError,
                    "row " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": text after closing quote");
      }
      field.text += c;
      field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kParseError,
                "row " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": unterminated quote");
  }
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::string CsvEscape(std::string_view value, char delimiter) {
  bool needs = value.find_first_of(std::string{'"', '\n', '\r', delimiter}) !=
               std::string_view::npos;
  if (!needs) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Dataset ParseDataset(std::string_view text, char delimiter) {
  auto rows = ParseCsv(text, delimiter);
  if (rows.empty()) throw Error(ErrorCode::kParseError, "row 1: missing header");
  const CsvRow& header = rows[0];
  std::vector<std::string> names;
  for (std::size_t c = 1; c < header.size(); ++c) names.push_back(header[c].text);

  std::vector<Record> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  "row " + std::to_string(r + 1) + ", column " +
                      std::to_string(std::min(row.size(), header.size()) + 1) +
                      ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(row.size()));
    }
    Record rec;
    rec.id = row[0].text;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c].text.empty()) {
        rec.values.emplace_back(std::nullopt);
      } else {
        rec.values.emplace_back(row[c].text);
      }
    }
    records.push_back(std::move(rec));
  }
  return Dataset(std::move(names), std::move(records));
}

TruthSet CloseTruth(std::vector<MatchPair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  const std::size_t given = pairs.size();
  Partition closure = Partition::FromEdges(std::move(pairs));
  TruthSet out;
  out.pairs = closure.pairs();
  out.added_by_closure = out.pairs.size() - given;
  return out;
}

TruthSet ParseTruth(std::string_view text, const Dataset* records, char delimiter) {
  auto rows = ParseCsv(text, delimiter);
  std::vector<MatchPair> pairs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.size() != 2) {
      throw Error(ErrorCode::kParseError,
                  "row " + std::to_string(r + 1) + ": expected 2 fields, got " +
                      std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (row[c].text.empty()) {
        throw Error(ErrorCode::kParseError, "row " + std::to_string(r + 1) +
                                                ", column " + std::to_string(c + 1) +
                                                ": empty id");
      }
      if (records != nullptr && records->Find(row[c].text) == nullptr) {
        throw Error(ErrorCode::kDanglingId, "row " + std::to_string(r + 1) +
                                                ": unknown record " + row[c].text);
      }
    }
    if (row[0].text == row[1].text) continue;
    pairs.emplace_back(row[0].text, row[1].text);
  }
  return CloseTruth(std::move(pairs));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

char DelimiterFor(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0 ? '\t'
                                                                           : ',';
}

LoadedData LoadDataset(const std::string& records_path,
                       const std::string& truth_path) {
  LoadedData data;
  data.records = ParseDataset(ReadFile(records_path), DelimiterFor(records_path));
  if (!truth_path.empty()) {
    data.truth =
        ParseTruth(ReadFile(truth_path), &data.records, DelimiterFor(truth_path));
  }
  return data;
}

std::string FormatDataset(const Dataset& records) {
  std::string out = "id";
  for (const auto& name : records.attribute_names()) out += "," + CsvEscape(name);
  out += '\n';
  for (const Record& r : records.records()) {
    out += CsvEscape(r.id);
    for (const auto& v : r.values) {
      out += ',';
      if (v) out += CsvEscape(*v);
    }
    out += '\n';
  }
  return out;
}

std::string FormatTruth(const std::vector<MatchPair>& truth) {
  std::string out = "left,right\n";
  for (const MatchPair& m : truth) {
    out += CsvEscape(m.left()) + "," + CsvEscape(m.right()) + "\n";
  }
  return out;
}

}  // namespace erefine
