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


// Chat-completions transport for AskLlm.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <optional>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "erefine/oracle.h"

namespace erefine {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string scheme_host_port;
  std::string path;
};

Endpoint SplitBaseUrl(const std::string& base_url) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "base_url lacks a scheme: " + base_url);
  }
  auto path_start = base_url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.scheme_host_port = base_url.substr(0, path_start);
  std::string prefix =
      path_start == std::string::npos ? std::string() : base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  ep.path = prefix + "/chat/completions";
  return ep;
}

std::optional<Tokens> UsageField(const json& usage, const char* primary,
                                 const char* alternate) {
  for (const char* key : {primary, alternate}) {
    auto it = usage.find(key);
    if (it != usage.end() && it->is_number_integer()) return it->get<Tokens>();
  }
  return std::nullopt;
}

struct Outcome {
  std::optional<OracleAnswer> answer;
  Tokens charged = 0;
  std::optional<ErrorCode> error;
  std::string message;
};

Outcome AskOne(const MatchPair& m, const LlmEndpointSpec& spec,
               const Endpoint& ep, const std::string& api_key,
               const Dataset& records, const CostModel& cm) {
  Outcome out;
  const std::string prompt = RenderPrompt(m, records);
  const Tokens estimate_in = PromptTokens(m, records, cm);
  const Tokens attempt_cost = estimate_in + cm.response_tokens;

  json body = {{"model", spec.model_name},
               {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
  const std::string payload = body.dump();

  httplib::Client client(ep.scheme_host_port);
  auto seconds = std::chrono::duration<double>(spec.timeout_seconds);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(seconds);
  client.set_connection_timeout(micros);
  client.set_read_timeout(micros);
  client.set_write_timeout(micros);
  httplib::Headers headers = {{"Authorization", "Bearer " + api_key}};

  Tokens failed = 0;
  for (int attempt = 0; attempt <= spec.max_retries; ++attempt) {
    if (attempt > 0 && spec.retry_backoff_seconds > 0.0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(
          spec.retry_backoff_seconds * static_cast<double>(1 << std::min(attempt - 1, 6))));
    }
    auto res = client.Post(ep.path, headers, payload, "application/json");
    if (!res) {
      out.error = ErrorCode::kTransportError;
      out.message = m.Encode() + ": " + httplib::to_string(res.error());
      if (spec.charge_failed_attempts) failed += attempt_cost;
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      out.error = ErrorCode::kAuthError;
      out.message = m.Encode() + ": HTTP " + std::to_string(res->status);
      out.charged = failed;
      return out;
    }
    if (res->status != 200) {
      out.error = ErrorCode::kTransportError;
      out.message = m.Encode() + ": HTTP " + std::to_string(res->status);
      if (spec.charge_failed_attempts) failed += attempt_cost;
      bool retryable = res->status == 429 || res->status >= 500;
      if (!retryable) break;
      continue;
    }

    json reply = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    std::optional<Tokens> tokens_in, tokens_out;
    std::string content;
    if (reply.is_object()) {
      auto usage = reply.find("usage");
      if (usage != reply.end() && usage->is_object()) {
        tokens_in = UsageField(*usage, "prompt_tokens", "input");
        tokens_out = UsageField(*usage, "completion_tokens", "output");
      }
      auto choices = reply.find("choices");
      if (choices != reply.end() && choices->is_array() && !choices->empty()) {
        const json& message = (*choices)[0].value("message", json::object());
        if (message.contains("content") && message["content"].is_string()) {
          content = message["content"].get<std::string>();
        }
      }
    }
    const Tokens billed_in = tokens_in.value_or(estimate_in);
    const Tokens billed_out = tokens_out.value_or(cm.response_tokens);
    try {
      Verdict v = ParseVerdict(content);
      OracleAnswer a{m, v, billed_in, billed_out, AnswerSource::kLlm, failed};
      out.answer = a;
      out.charged = a.billed();
      out.error.reset();
      return out;
    } catch (const Error& e) {
      // The request was served and billed even though the text is unusable.
      failed += billed_in + billed_out;
      out.error = ErrorCode::kUnparseableAnswer;
      out.message = m.Encode() + ": " + e.what();
    }
  }
  out.charged = failed;
  return out;
}

}  // namespace

void LlmEndpointSpec::Validate() const {
  if (max_retries < 0) throw Error(ErrorCode::kInvalidArgument, "max_retries < 0");
  if (max_in_flight < 1) throw Error(ErrorCode::kInvalidArgument, "max_in_flight < 1");
  if (!(timeout_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "timeout must be > 0");
  }
  SplitBaseUrl(base_url);
}

std::vector<OracleAnswer> AskLlm(const QuestionSet& q, const LlmEndpointSpec& spec,
                                 const Dataset& records, const CostModel& cm) {
  spec.Validate();
  const char* key = std::getenv(spec.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw OracleError(ErrorCode::kAuthError,
                      "environment variable " + spec.api_key_env + " is not set", 0);
  }
  const std::string api_key(key);
  const Endpoint ep = SplitBaseUrl(spec.base_url);
  for (const MatchPair& m : q.pairs()) {
    records.At(m.left());
    records.At(m.right());
  }

  std::vector<Outcome> outcomes(q.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < q.size(); i = next++) {
      outcomes[i] = AskOne(q.pairs()[i], spec, ep, api_key, records, cm);
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(spec.max_in_flight), q.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  if (workers > 0) worker();
  for (auto& t : pool) t.join();

  Tokens charged = 0;
  const Outcome* first_failure = nullptr;
  std::vector<OracleAnswer> answers;
  answers.reserve(q.size());
  for (const Outcome& o : outcomes) {
    charged += o.charged;
    if (o.answer) {
      answers.push_back(*o.answer);
    } else if (first_failure == nullptr) {
      first_failure = &o;
    }
  }
  if (first_failure != nullptr) {
    throw OracleError(first_failure->error.value_or(ErrorCode::kTransportError),
                      first_failure->message, charged);
  }
  return answers;
}

}  // namespace erefine
