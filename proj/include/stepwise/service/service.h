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

#ifndef STEPWISE_SERVICE_SERVICE_H_
#define STEPWISE_SERVICE_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepwise/core/model.h"
#include "stepwise/pipeline/pipeline.h"

namespace httplib {
class Server;
}

namespace stepwise::service {

// Event type names as written to the log.
inline constexpr const char* kSessionCreated = "SessionCreated";
inline constexpr const char* kCodeUpdated = "CodeUpdated";
inline constexpr const char* kHintRequested = "HintRequested";
inline constexpr const char* kCodeHintViewed = "CodeHintViewed";
inline constexpr const char* kHintAccepted = "HintAccepted";
inline constexpr const char* kHintCancelled = "HintCancelled";
inline constexpr const char* kHintRegenerated = "HintRegenerated";

struct LogReadResult {
  std::vector<nlohmann::json> events;
  std::vector<std::string> warnings;
  std::optional<std::string> corruption;  // set when the log cannot be trusted
};

// One append-only JSON-lines file per session.
class SessionLog {
 public:
  explicit SessionLog(std::filesystem::path dir);

  bool Exists(const std::string& session_id) const;
  void Append(const std::string& session_id, const nlohmann::json& event) const;
  // A final line cut off mid-write is dropped (and trimmed from the file);
  // any other unreadable line marks the log corrupt.
  LogReadResult Read(const std::string& session_id) const;
  std::filesystem::path PathOf(const std::string& session_id) const;

 private:
  std::filesystem::path dir_;
};

struct HintRecord {
  HintBundle bundle;
  bool viewed = false;
  bool accepted = false;
  bool cancelled = false;
};

struct Session {
  std::string session_id;
  std::string task_id;
  std::string current_code;
  int attempt = 0;
  std::optional<std::string> last_test_errors;
  bool hint_requested = false;
  std::string last_hint_id;
  std::map<std::string, HintRecord> hints;
  std::vector<nlohmann::json> events;
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rebuilds session state from its event log.
Session ReplaySession(const std::string& session_id, const std::vector<nlohmann::json>& events);

struct Reply {
  int status = 200;
  nlohmann::json body;  // null for 204
};

class HintService {
 public:
  HintService(std::vector<TaskSpec> pack, llm::Gateway& gateway, std::filesystem::path data_dir);

  Reply ListTasks() const;
  Reply GetTask(const std::string& task_id) const;
  Reply CreateSession(const nlohmann::json& body);
  Reply GetSession(const std::string& session_id);
  Reply PutCode(const std::string& session_id, const nlohmann::json& body);
  Reply RequestHint(const std::string& session_id, const nlohmann::json& body);
  Reply Regenerate(const std::string& session_id, const nlohmann::json& body);
  Reply GetHintCode(const std::string& session_id, const std::string& hint_id);
  Reply Accept(const std::string& session_id, const std::string& hint_id);
  Reply Cancel(const std::string& session_id, const std::string& hint_id);

  const SessionLog& log() const { return log_; }

 private:
  struct Slot {
    std::mutex mu;
    bool loaded = false;
    std::optional<Session> session;
    std::string error;  // non-empty when the log is unrecoverable
  };

  std::shared_ptr<Slot> SlotFor(const std::string& session_id);
  template <typename F>
  Reply WithSession(const std::string& session_id, F&& f);
  void Record(Session& s, nlohmann::json event);
  Reply Hint(Session& s, const nlohmann::json& body, bool regenerate);

  std::vector<TaskSpec> pack_;
  pipeline::Pipeline pipeline_;
  SessionLog log_;
  std::mutex slots_mu_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::string cors_origin = "*";
};

// Registers every route of `service` on `server`.
void Mount(httplib::Server& server, HintService& service, const ServerOptions& options = {});

}  // namespace stepwise::service

#endif  // STEPWISE_SERVICE_SERVICE_H_
