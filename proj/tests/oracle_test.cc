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


#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "erefine/oracle.h"
#include "erefine/prompt.h"
#include "fixtures.h"

namespace erefine {
namespace {

using testing::ExampleRecords;
using testing::P;

TEST(PromptTest, ContainsBothRecords) {
  Dataset d = ExampleRecords();
  std::string prompt = RenderPrompt(P("r3", "r4"), d);
  EXPECT_NE(prompt.find("Name: Jane Smith"), std::string::npos);
  EXPECT_NE(prompt.find("Name: Jane S."), std::string::npos);
  EXPECT_NE(prompt.find("\"yes\" or \"no\""), std::string::npos);
  EXPECT_THROW(RenderPrompt(P("r3", "zz"), d), Error);
}

TEST(PromptTest, IdenticalRecordsSerializeIdentically) {
  Dataset d({"A"}, {Record{"x", {"v"}}, Record{"y", {"v"}}});
  std::string prompt = RenderPrompt(P("x", "y"), d);
  EXPECT_NE(prompt.find("Record A: A: v\n"), std::string::npos);
  EXPECT_NE(prompt.find("Record B: A: v\n"), std::string::npos);
}

TEST(PromptTest, EmptyValueKeepsLabel) {
  Record r{"x", {"Widget", std::nullopt}};
  EXPECT_EQ(SerializeRecord(r, {"Item", "Price"}), "Item: Widget; Price: ");
}

TEST(ParseVerdictTest, Cases) {
  EXPECT_EQ(ParseVerdict("Yes"), Verdict::kYes);
  EXPECT_EQ(ParseVerdict("  no."), Verdict::kNo);
  EXPECT_EQ(ParseVerdict("\"YES\", they match"), Verdict::kYes);
  for (const char* bad : {"They are similar", "", "yesterday", "nobody"}) {
    try {
      ParseVerdict(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnparseableAnswer);
    }
  }
}

TEST(SimulatedOracleTest, ExtremeThetas) {
  Dataset d = ExampleRecords();
  QuestionSet q({P("r1", "r7"), P("r1", "r3"), P("r3", "r4")});
  SimulatedOracleSpec spec{{P("r1", "r7"), P("r3", "r4")}, 1.0, 9};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    spec.seed = seed;
    spec.theta = 1.0;
    auto right = AskSimulated(q, spec, d, CostModel());
    spec.theta = 0.0;
    auto wrong = AskSimulated(q, spec, d, CostModel());
    for (std::size_t i = 0; i < q.size(); ++i) {
      Verdict truth = q.pairs()[i] == P("r1", "r3") ? Verdict::kNo : Verdict::kYes;
      EXPECT_EQ(right[i].verdict, truth);
      EXPECT_NE(wrong[i].verdict, truth);
    }
  }
}

TEST(SimulatedOracleTest, FlipRate) {
  const MatchPair m = P("r4", "r8");
  int flips = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) flips += SimulatedFlip(seed, m, 0, 0.9);
  EXPECT_NEAR(flips / 10000.0, 0.10, 0.01);
  int repeat_flips = 0;
  for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
    repeat_flips += SimulatedFlip(1, m, attempt, 0.9);
  }
  EXPECT_NEAR(repeat_flips / 10000.0, 0.10, 0.01);
}

TEST(SimulatedOracleTest, DeterministicAndCharged) {
  Dataset d = ExampleRecords();
  SimulatedOracleSpec spec{{P("r1", "r7")}, 0.7, 4};
  QuestionSet q({P("r1", "r7"), P("r2", "r5")});
  SimulatedOracle a(spec, CostModel()), b(spec, CostModel());
  for (int round = 0; round < 5; ++round) {
    auto x = a.Ask(q, d), y = b.Ask(q, d);
    ASSERT_EQ(x.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_EQ(x[i].verdict, y[i].verdict);
      EXPECT_EQ(x[i].billed(), MqCost(q.pairs()[i], d, CostModel()));
    }
  }
  EXPECT_EQ(AskSimulated(q, spec, d, CostModel())[0].verdict,
            SimulatedOracle(spec, CostModel()).Ask(q, d)[0].verdict);
}

class AllWrongOracle : public Oracle {
 public:
  explicit AllWrongOracle(std::vector<MatchPair> truth) : truth_(std::move(truth)) {}
  std::vector<OracleAnswer> Ask(const QuestionSet& q, const Dataset&) override {
    std::vector<OracleAnswer> out;
    for (const MatchPair& m : q.pairs()) {
      bool dup = std::find(truth_.begin(), truth_.end(), m) != truth_.end();
      out.push_back({m, dup ? Verdict::kNo : Verdict::kYes});
    }
    return out;
  }

 private:
  std::vector<MatchPair> truth_;
};

std::vector<LabeledPair> HundredPairs(std::vector<MatchPair>* truth) {
  std::vector<LabeledPair> out;
  for (int i = 0; i < 100; ++i) {
    MatchPair m("a" + std::to_string(i), "b" + std::to_string(i));
    bool dup = i % 2 == 0;
    if (dup) truth->push_back(m);
    out.push_back({m, dup ? Verdict::kYes : Verdict::kNo});
  }
  return out;
}

Dataset HundredPairRecords() {
  std::vector<Record> records;
  for (int i = 0; i < 100; ++i) {
    records.push_back(Record{"a" + std::to_string(i), {"x"}});
    records.push_back(Record{"b" + std::to_string(i), {"y"}});
  }
  return Dataset({"A"}, std::move(records));
}

TEST(EstimateCapabilityTest, ClampsAndEstimates) {
  Dataset d = HundredPairRecords();
  std::vector<MatchPair> truth;
  auto labeled = HundredPairs(&truth);
  SimulatedOracle perfect({truth, 1.0, 0}, CostModel());
  EXPECT_DOUBLE_EQ(EstimateCapability(labeled, perfect, d), 0.99);
  AllWrongOracle wrong(truth);
  EXPECT_DOUBLE_EQ(EstimateCapability(labeled, wrong, d), 0.01);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimulatedOracle noisy({truth, 0.9, seed}, CostModel());
    EXPECT_NEAR(EstimateCapability(labeled, noisy, d), 0.90, 0.07);
  }
  EXPECT_DOUBLE_EQ(ClampTheta(1.0), 0.99);
  EXPECT_DOUBLE_EQ(ClampTheta(0.5), 0.5);
}

// Local chat-completions stub.
class StubServer {
 public:
  explicit StubServer(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  LlmEndpointSpec Spec() const {
    LlmEndpointSpec spec;
    spec.base_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1";
    spec.api_key_env = "EREFINE_TEST_KEY";
    spec.retry_backoff_seconds = 0.0;
    spec.timeout_seconds = 2.0;
    return spec;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

std::string Reply(const std::string& content, int in, int out) {
  nlohmann::json j = {{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}},
                      {"usage", {{"prompt_tokens", in}, {"completion_tokens", out}}}};
  return j.dump();
}

class LlmClientTest : public ::testing::Test {
 protected:
  void SetUp() override { setenv("EREFINE_TEST_KEY", "sk-test", 1); }
};

TEST_F(LlmClientTest, AllYesWithUsage) {
  std::atomic<int> auth_ok{0};
  StubServer stub([&](const httplib::Request& req, httplib::Response& res) {
    if (req.get_header_value("Authorization") == "Bearer sk-test") ++auth_ok;
    auto body = nlohmann::json::parse(req.body);
    EXPECT_EQ(body["messages"][0]["role"], "user");
    res.set_content(Reply("Yes", 20, 2), "application/json");
  });
  Dataset d = ExampleRecords();
  QuestionSet q({P("r1", "r7"), P("r3", "r4"), P("r2", "r5")});
  auto answers = AskLlm(q, stub.Spec(), d, CostModel());
  ASSERT_EQ(answers.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(answers[i].pair, q.pairs()[i]);
    EXPECT_EQ(answers[i].verdict, Verdict::kYes);
    EXPECT_EQ(answers[i].tokens_in, 20);
    EXPECT_EQ(answers[i].tokens_out, 2);
    EXPECT_EQ(answers[i].billed(), 22);
    EXPECT_EQ(answers[i].source, AnswerSource::kLlm);
  }
  EXPECT_EQ(auth_ok.load(), 3);
}

TEST_F(LlmClientTest, AlternateUsageKeys) {
  StubServer stub([](const httplib::Request&, httplib::Response& res) {
    nlohmann::json j = {{"choices", {{{"message", {{"content", "no"}}}}}},
                        {"usage", {{"input", 20}, {"output", 2}}}};
    res.set_content(j.dump(), "application/json");
  });
  auto answers = AskLlm(QuestionSet({P("r1", "r7")}), stub.Spec(), ExampleRecords(), CostModel());
  EXPECT_EQ(answers[0].verdict, Verdict::kNo);
  EXPECT_EQ(answers[0].billed(), 22);
}

TEST_F(LlmClientTest, TimeoutsBecomeTransportError) {
  std::atomic<int> hits{0};
  StubServer stub([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    res.set_content(Reply("yes", 20, 2), "application/json");
  });
  LlmEndpointSpec spec = stub.Spec();
  spec.timeout_seconds = 0.2;
  spec.max_retries = 2;
  Dataset d = ExampleRecords();
  const MatchPair m = P("r1", "r7");
  try {
    AskLlm(QuestionSet({m}), spec, d, CostModel());
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransportError);
    EXPECT_EQ(e.charged_tokens(), 3 * MqCost(m, d, CostModel()));
  }
  EXPECT_EQ(hits.load(), 3);

  spec.charge_failed_attempts = false;
  try {
    AskLlm(QuestionSet({m}), spec, d, CostModel());
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.charged_tokens(), 0);
  }
}

TEST_F(LlmClientTest, RetriesServerErrorsThenSucceeds) {
  std::atomic<int> hits{0};
  StubServer stub([&](const httplib::Request&, httplib::Response& res) {
    if (hits++ == 0) {
      res.status = 503;
      return;
    }
    res.set_content(Reply("no", 10, 1), "application/json");
  });
  Dataset d = ExampleRecords();
  const MatchPair m = P("r1", "r7");
  auto answers = AskLlm(QuestionSet({m}), stub.Spec(), d, CostModel());
  EXPECT_EQ(answers[0].verdict, Verdict::kNo);
  EXPECT_EQ(answers[0].failed_attempt_tokens, MqCost(m, d, CostModel()));
  EXPECT_EQ(answers[0].billed(), 11 + MqCost(m, d, CostModel()));
}

TEST_F(LlmClientTest, AuthAndUnparseable) {
  StubServer denied([](const httplib::Request&, httplib::Response& res) { res.status = 401; });
  try {
    AskLlm(QuestionSet({P("r1", "r7")}), denied.Spec(), ExampleRecords(), CostModel());
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAuthError);
  }

  StubServer vague([](const httplib::Request&, httplib::Response& res) {
    res.set_content(Reply("They look alike", 20, 4), "application/json");
  });
  LlmEndpointSpec spec = vague.Spec();
  spec.max_retries = 1;
  try {
    AskLlm(QuestionSet({P("r1", "r7")}), spec, ExampleRecords(), CostModel());
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnparseableAnswer);
    EXPECT_EQ(e.charged_tokens(), 48);
  }
}

TEST_F(LlmClientTest, MissingKey) {
  LlmEndpointSpec spec;
  spec.api_key_env = "EREFINE_TEST_KEY_UNSET";
  unsetenv("EREFINE_TEST_KEY_UNSET");
  try {
    AskLlm(QuestionSet({P("r1", "r7")}), spec, ExampleRecords(), CostModel());
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAuthError);
  }
}

}  // namespace
}  // namespace erefine
