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


#include "erefine/prompt.h"

#include <cmath>

#include "erefine/error.h"

namespace erefine {
namespace {

constexpr std::string_view kPromptHead =
    "Given two records A and B, identify whether they refer to the same "
    "entity and answer me only \"yes\" or \"no\".\nRecord A: ";
constexpr std::string_view kPromptMiddle = "\nRecord B: ";
constexpr std::string_view kPromptTail = "\n";

Tokens CeilTokens(std::size_t chars, double chars_per_token) {
  return static_cast<Tokens>(std::ceil(static_cast<double>(chars) / chars_per_token));
}

}  // namespace

std::string SerializeRecord(const Record& record,
                            const std::vector<std::string>& attribute_names) {
  std::string out;
  for (std::size_t e = 0; e < attribute_names.size(); ++e) {
    if (e > 0) out += "; ";
    out += attribute_names[e];
    out += ": ";
    if (record.values[e]) out += *record.values[e];
  }
  return out;
}

std::string RenderPrompt(const MatchPair& m, const Dataset& records) {
  const Record& a = records.At(m.left());
  const Record& b = records.At(m.right());
  std::string out(kPromptHead);
  out += SerializeRecord(a, records.attribute_names());
  out += kPromptMiddle;
  out += SerializeRecord(b, records.attribute_names());
  out += kPromptTail;
  return out;
}

std::size_t PromptTemplateChars() {
  return kPromptHead.size() + kPromptMiddle.size() + kPromptTail.size();
}

void CostModel::Validate() const {
  if (!(chars_per_token > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "chars_per_token must be > 0");
  }
  if (response_tokens < 0 ||
      (prompt_overhead_tokens && *prompt_overhead_tokens < 0)) {
    throw Error(ErrorCode::kInvalidArgument, "token counts must be >= 0");
  }
}

Tokens PromptTokens(const MatchPair& m, const Dataset& records,
                    const CostModel& cm) {
  const std::string prompt = RenderPrompt(m, records);
  if (!cm.prompt_overhead_tokens) {
    return CeilTokens(prompt.size(), cm.chars_per_token);
  }
  return *cm.prompt_overhead_tokens +
         CeilTokens(prompt.size() - PromptTemplateChars(), cm.chars_per_token);
}

Tokens MqCost(const MatchPair& m, const Dataset& records, const CostModel& cm) {
  Tokens cost = PromptTokens(m, records, cm) + cm.response_tokens;
  return cost < 1 ? 1 : cost;
}

}  // namespace erefine
