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

#ifndef GECOMB_CHAT_BACKEND_H_
#define GECOMB_CHAT_BACKEND_H_

#include <chrono>
#include <functional>
#include <memory>
#include <string>

namespace gecomb {

struct ChatRequest {
  std::string system_message;
  std::string user_message;
  double temperature = 1.0;
};

/// A chat-completion service. complete() returns the assistant text or throws
/// BackendError. Implementations must be safe to call from several threads.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

struct HttpBackendConfig {
  /// e.g. "https://api.openai.com/v1"; requests go to <base>/chat/completions.
  std::string base_url;
  std::string model;
  std::string bearer_token;
  std::chrono::milliseconds timeout{60000};
};

/// Client for the common chat-completions JSON schema.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);
  std::string complete(const ChatRequest& request) override;

 private:
  HttpBackendConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // path prefix + "/chat/completions"
};

/// Offline stand-in that reads the labeled candidates back out of the ranking
/// prompt. kLexMin answers with all labels ordered by candidate text (smallest
/// first), so its choice depends only on content. kFixedLabel always puts one
/// label first, followed by the others in issued order.
class MockChatBackend : public ChatBackend {
 public:
  enum class Mode { kLexMin, kFixedLabel };

  static MockChatBackend lexmin() { return MockChatBackend(Mode::kLexMin, 'A'); }
  static MockChatBackend fixed(char label) {
    return MockChatBackend(Mode::kFixedLabel, label);
  }

  std::string complete(const ChatRequest& request) override;

 private:
  MockChatBackend(Mode mode, char label) : mode_(mode), label_(label) {}

  Mode mode_;
  char label_;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
};

using SleepFn = std::function<void(std::chrono::milliseconds)>;

/// Calls backend.complete(), retrying BackendError up to policy.max_retries
/// times with exponential backoff. Rethrows the last error.
std::string complete_with_retry(ChatBackend& backend, const ChatRequest& request,
                                const RetryPolicy& policy,
                                const SleepFn& sleep = {});

/// "lexmin" or "label:<X>". Throws ValidationError for anything else.
std::unique_ptr<ChatBackend> make_mock_backend(const std::string& spec);

}  // namespace gecomb

#endif  // GECOMB_CHAT_BACKEND_H_
