// Copyright 2026 The Stepwise Authors.
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

#ifndef STEPWISE_LLM_GATEWAY_H_
#define STEPWISE_LLM_GATEWAY_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stepwise/prompts/prompt_kit.h"

namespace stepwise::llm {

enum class ProviderMode { kReplay, kRecord, kLive };

std::string_view ModeName(ProviderMode mode);
std::optional<ProviderMode> ModeFromName(std::string_view name);

struct ProviderConfig {
  ProviderMode mode = ProviderMode::kReplay;
  std::string endpoint;  // full URL of the chat-completion endpoint
  std::string model;
  std::string token_env = "STEPWISE_LLM_TOKEN";
  std::filesystem::path fixture_path;
  double timeout_seconds = 60;
  int max_retries = 2;
  // JSON pointer to the reply text in the provider's response body.
  std::string response_pointer = "/choices/0/message/content";
};

struct FixtureEntry {
  std::string fingerprint;
  std::string task_id;
  prompts::Stage stage = prompts::Stage::kSubgoals;
  std::string request_text;
  std::string response_text;
  std::string recorded_at;

  friend bool operator==(const FixtureEntry&, const FixtureEntry&) = default;
};

using FixtureSet = std::map<std::string, FixtureEntry>;  // by fingerprint

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `path` is a directory of `<task>/<fingerprint>.json` files (missing or
// empty means no entries) or a single JSON file holding an array of entries.
// Throws FixtureError naming the entry index and file.
FixtureSet LoadFixtures(const std::filesystem::path& path);
void SaveFixtures(const FixtureSet& set, const std::filesystem::path& path);
void SaveFixture(const FixtureEntry& entry, const std::filesystem::path& dir);

class FixtureMiss : public std::runtime_error {
 public:
  explicit FixtureMiss(std::string fingerprint)
      : std::runtime_error("no fixture for fingerprint " + fingerprint),
        fingerprint_(std::move(fingerprint)) {}
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::string fingerprint_;
};

class ProviderTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProviderError : public std::runtime_error {
 public:
  ProviderError(int status, const std::string& message)
      : std::runtime_error("provider error " + std::to_string(status) + ": " + message),
        status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct HttpResponse {
  int status = 0;  // 0 means the request never completed
  std::string body;
  bool timed_out = false;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse Post(const std::string& url, const std::string& body,
                            const std::vector<std::pair<std::string, std::string>>& headers,
                            double timeout_seconds) = 0;
};

class HttpTransport : public Transport {
 public:
  HttpResponse Post(const std::string& url, const std::string& body,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    double timeout_seconds) override;

  // Requests issued by all HttpTransport instances in this process.
  static long requests() { return requests_.load(); }

 private:
  static std::atomic<long> requests_;
};

// OpenAI-compatible chat-completion request body: one user message.
std::string ChatRequestBody(const std::string& model, const std::string& prompt);

class Gateway {
 public:
  // `transport` defaults to HttpTransport. Throws FixtureError in Replay and
  // Record mode when the fixture directory is unreadable.
  explicit Gateway(ProviderConfig config, std::shared_ptr<Transport> transport = nullptr);

  // Thread-safe.
  std::string Complete(const prompts::PromptRequest& request);

  const ProviderConfig& config() const { return config_; }

 private:
  std::string CallProvider(const prompts::PromptRequest& request);

  ProviderConfig config_;
  std::shared_ptr<Transport> transport_;
  std::mutex mu_;
  FixtureSet fixtures_;
};

}  // namespace stepwise::llm

#endif  // STEPWISE_LLM_GATEWAY_H_
