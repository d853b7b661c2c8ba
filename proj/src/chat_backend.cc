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

#include <algorithm>
#include <cctype>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "gecomb/error.h"
#include "httplib.h"
#include "json.hpp"

namespace gecomb {

HttpChatBackend::HttpChatBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("base URL needs a scheme: " + config_.base_url);
  }
  const auto path_start = config_.base_url.find('/', scheme_end + 3);
  origin_ = config_.base_url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos
                           ? std::string()
                           : config_.base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/chat/completions";
}

std::string HttpChatBackend::complete(const ChatRequest& request) {
  nlohmann::json body = {
      {"model", config_.model},
      {"temperature", request.temperature},
      {"messages",
       {{{"role", "system"}, {"content", request.system_message}},
        {{"role", "user"}, {"content", request.user_message}}}}};

  httplib::Client client(origin_);
  const auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      config_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (!config_.bearer_token.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.bearer_token);
  }

  auto result = client.Post(path_, headers, body.dump(), "application/json");
  if (!result) {
    throw BackendError("request to " + origin_ + path_ + " failed: " +
                       httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw BackendError("HTTP " + std::to_string(result->status) + " from " +
                       origin_ + path_);
  }
  try {
    const auto reply = nlohmann::json::parse(result->body);
    return reply.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed chat-completion response: ") +
                       e.what());
  }
}

std::string MockChatBackend::complete(const ChatRequest& request) {
  // Candidate lines look like "<X>: <sentence>" and follow "EDITED:".
  std::istringstream in(request.user_message);
  std::string line;
  bool in_candidates = false;
  std::vector<std::pair<std::string, char>> candidates;
  while (std::getline(in, line)) {
    if (line == "EDITED:") {
      in_candidates = true;
      continue;
    }
    if (!in_candidates) continue;
    if (line.size() >= 3 && std::isupper(static_cast<unsigned char>(line[0])) &&
        line[1] == ':' && line[2] == ' ') {
      candidates.emplace_back(line.substr(3), line[0]);
    } else {
      break;
    }
  }
  if (candidates.empty()) throw BackendError("mock: no candidates in prompt");

  std::vector<char> order;
  if (mode_ == Mode::kLexMin) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& c : candidates) order.push_back(c.second);
  } else {
    order.push_back(label_);
    for (const auto& c : candidates) {
      if (c.second != label_) order.push_back(c.second);
    }
  }
  std::string answer = "OUTPUT:\n";
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) answer += ' ';
    answer += order[k];
  }
  return answer;
}

std::string complete_with_retry(ChatBackend& backend, const ChatRequest& request,
                                const RetryPolicy& policy, const SleepFn& sleep) {
  auto delay = policy.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return backend.complete(request);
    } catch (const BackendError&) {
      if (attempt >= policy.max_retries) throw;
    }
    if (sleep) {
      sleep(delay);
    } else {
      std::this_thread::sleep_for(delay);
    }
    delay = std::chrono::milliseconds(static_cast<long long>(
        static_cast<double>(delay.count()) * policy.multiplier));
  }
}

std::unique_ptr<ChatBackend> make_mock_backend(const std::string& spec) {
  if (spec == "lexmin") {
    return std::make_unique<MockChatBackend>(MockChatBackend::lexmin());
  }
  if (spec.size() == 7 && spec.rfind("label:", 0) == 0 &&
      std::isupper(static_cast<unsigned char>(spec[6]))) {
    return std::make_unique<MockChatBackend>(MockChatBackend::fixed(spec[6]));
  }
  throw ValidationError("unknown mock backend '" + spec +
                        "' (expected lexmin or label:<A-Z>)");
}

}  // namespace gecomb
