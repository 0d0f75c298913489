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


// Matching-question prompt text and its token price.

#ifndef EREFINE_PROMPT_H_
#define EREFINE_PROMPT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "erefine/core.h"

namespace erefine {

using Tokens = std::int64_t;

// "Name: Jane Smith; Email: ...", schema order; absent values are empty.
std::string SerializeRecord(const Record& record,
                            const std::vector<std::string>& attribute_names);

// Throws kUnknownRecord.
std::string RenderPrompt(const MatchPair& m, const Dataset& records);

// Characters of the prompt that do not depend on the records.
std::size_t PromptTemplateChars();

struct CostModel {
  double chars_per_token = 4.0;
  // When unset the whole prompt is priced at chars_per_token; when set, the
  // template is billed at this flat amount and only record text is priced.
  std::optional<Tokens> prompt_overhead_tokens;
  Tokens response_tokens = 1;

  // Throws kInvalidArgument.
  void Validate() const;
};

// Estimated input tokens of the prompt for m.
Tokens PromptTokens(const MatchPair& m, const Dataset& records,
                    const CostModel& cm);

// PromptTokens + response_tokens; always >= 1.
Tokens MqCost(const MatchPair& m, const Dataset& records, const CostModel& cm);

}  // namespace erefine

#endif  // EREFINE_PROMPT_H_
