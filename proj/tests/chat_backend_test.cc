// Copyright 2026 The gecomb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gecomb/chat_backend.h"

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "gecomb/error.h"
#include "httplib.h"
#include "json.hpp"

namespace gecomb {
namespace {

const char kPrompt[] =
    "Pick one.\nORIGINAL:\nx y\nEDITED:\nA: b c\nB: a c\nC: b a\n"
    "Respond.\nOUTPUT:\n";

TEST(MockBackendTest, LexMinRanksByCandidateText) {
  auto mock = MockChatBackend::lexmin();
  EXPECT_EQ(mock.complete({"", kPrompt}), "OUTPUT:\nB C A");
}

TEST(MockBackendTest, FixedLabelAnswersFirst) {
  auto mock = MockChatBackend::fixed('C');
  EXPECT_EQ(mock.complete({"", kPrompt}), "OUTPUT:\nC A B");
}

TEST(MockBackendTest, PromptWithoutCandidatesFails) {
  auto mock = MockChatBackend::lexmin();
  EXPECT_THROW(mock.complete({"", "nothing here"}), BackendError);
}

TEST(MockBackendTest, FactorySpecs) {
  EXPECT_NE(make_mock_backend("lexmin"), nullptr);
  EXPECT_NE(make_mock_backend("label:B"), nullptr);
  EXPECT_THROW(make_mock_backend("label:b"), ValidationError);
  EXPECT_THROW(make_mock_backend("random"), ValidationError);
}

class FlakyBackend : public ChatBackend {
 public:
  explicit FlakyBackend(int failures) : failures_(failures) {}
  std::string complete(const ChatRequest&) override {
    ++calls;
    if (calls <= failures_) throw BackendError("flaky");
    return "ok";
  }
  int calls = 0;

 private:
  int failures_;
};

TEST(RetryTest, RecoversWithinBudget) {
  FlakyBackend backend(3);
  std::vector<long long> waits;
  const auto reply = complete_with_retry(
      backend, {}, RetryPolicy{},
      [&](std::chrono::milliseconds d) { waits.push_back(d.count()); });
  EXPECT_EQ(reply, "ok");
  EXPECT_EQ(backend.calls, 4);
  EXPECT_EQ(waits, (std::vector<long long>{500, 1000, 2000}));
}

TEST(RetryTest, GivesUpAfterMaxRetries) {
  FlakyBackend backend(4);
  int sleeps = 0;
  EXPECT_THROW(complete_with_retry(backend, {}, RetryPolicy{},
                                   [&](std::chrono::milliseconds) { ++sleeps; }),
               BackendError);
  EXPECT_EQ(backend.calls, 4);
  EXPECT_EQ(sleeps, 3);
}

class LocalServer {
 public:
  explicit LocalServer(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1";
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpBackendTest, SendsChatCompletionRequest) {
  nlohmann::json seen;
  std::string auth;
  LocalServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(
        R"({"choices":[{"index":0,"message":{"role":"assistant","content":"C"}}]})",
        "application/json");
  });
  HttpChatBackend backend({server.url() + "/", "gpt-test", "secret",
                           std::chrono::milliseconds(5000)});
  EXPECT_EQ(backend.complete({"sys", "user text", 1.0}), "C");
  EXPECT_EQ(auth, "Bearer secret");
  EXPECT_EQ(seen["model"], "gpt-test");
  EXPECT_EQ(seen["temperature"], 1.0);
  ASSERT_EQ(seen["messages"].size(), 2u);
  EXPECT_EQ(seen["messages"][0]["role"], "system");
  EXPECT_EQ(seen["messages"][0]["content"], "sys");
  EXPECT_EQ(seen["messages"][1]["role"], "user");
  EXPECT_EQ(seen["messages"][1]["content"], "user text");
}

TEST(HttpBackendTest, ErrorStatusAndMalformedBody) {
  std::atomic<int> calls = 0;
  LocalServer server([&](const httplib::Request&, httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 429;
      res.set_content("slow down", "text/plain");
    } else {
      res.set_content(R"({"choices":[]})", "application/json");
    }
  });
  HttpChatBackend backend({server.url(), "m", "", std::chrono::milliseconds(5000)});
  EXPECT_THROW(backend.complete({"s", "u"}), BackendError);
  EXPECT_THROW(backend.complete({"s", "u"}), BackendError);
}

TEST(HttpBackendTest, RetryRecoversFromServerErrors) {
  std::atomic<int> calls = 0;
  LocalServer server([&](const httplib::Request&, httplib::Response& res) {
    if (calls++ < 2) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"choices":[{"message":{"content":"B"}}]})",
                    "application/json");
  });
  HttpChatBackend backend({server.url(), "m", "", std::chrono::milliseconds(5000)});
  RetryPolicy policy;
  policy.initial_backoff = std::chrono::milliseconds(1);
  EXPECT_EQ(complete_with_retry(backend, {"s", "u"}, policy), "B");
  EXPECT_EQ(calls.load(), 3);
}

TEST(HttpBackendTest, UnreachableServer) {
  HttpChatBackend backend({"http://127.0.0.1:1", "m", "",
                           std::chrono::milliseconds(500)});
  EXPECT_THROW(backend.complete({"s", "u"}), BackendError);
}

TEST(HttpBackendTest, UrlWithoutSchemeIsRejected) {
  EXPECT_THROW(HttpChatBackend({"localhost:8000", "m", "", {}}), ValidationError);
}

}  // namespace
}  // namespace gecomb
