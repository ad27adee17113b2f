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

#include "stepwise/service/service.h"

#include <spdlog/spdlog.h>

#include <cctype>
#include <fstream>
#include <sstream>

#include "httplib.h"

namespace stepwise::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kStarterCode = "fun main() {\n}\n";

bool ValidId(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
  }
  return true;
}

Reply Error(int status, const std::string& error, const std::string& message = "") {
  json body = {{"error", error}};
  if (!message.empty()) body["message"] = message;
  return {status, body};
}

std::optional<std::string> OptionalString(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || body[key].is_null()) return std::nullopt;
  if (!body[key].is_string()) throw std::invalid_argument(std::string(key) + " must be a string");
  return body[key].get<std::string>();
}

json Highlight(const LineSpan& s) { return {{"startLine", s.start_line}, {"endLine", s.end_line}}; }

// The single place where events change session state, live and on replay.
void Apply(Session& s, const json& e) {
  const std::string type = e.at("type");
  if (s.events.empty() != (type == kSessionCreated)) {
    throw ReplayError("event " + std::to_string(s.events.size() + 1) + " (" + type +
                      ") out of order");
  }
  if (type == kSessionCreated) {
    s.task_id = e.at("taskId");
    s.current_code = e.at("code");
    s.attempt = 0;
  } else if (type == kCodeUpdated) {
    s.current_code = e.at("code");
    s.attempt = 0;
    s.hint_requested = false;
  } else if (type == kHintRequested || type == kHintRegenerated) {
    s.attempt = e.at("attempt");
    s.hint_requested = true;
    s.last_test_errors = e.contains("testErrors") && !e["testErrors"].is_null()
                             ? std::optional<std::string>(e["testErrors"].get<std::string>())
                             : std::nullopt;
    if (e.contains("bundle")) {
      HintRecord rec;
      rec.bundle = HintBundleFromJson(e["bundle"]);
      s.last_hint_id = rec.bundle.hint_id;
      s.hints[rec.bundle.hint_id] = std::move(rec);
    }
  } else if (type == kCodeHintViewed || type == kHintAccepted || type == kHintCancelled) {
    auto it = s.hints.find(e.at("hintId").get<std::string>());
    if (it == s.hints.end()) throw ReplayError(type + " for unknown hint");
    if (type == kCodeHintViewed) {
      it->second.viewed = true;
    } else if (type == kHintCancelled) {
      it->second.cancelled = true;
    } else {
      it->second.accepted = true;
      s.current_code = e.at("code");
      s.attempt = 0;
      s.hint_requested = false;
    }
  } else {
    throw ReplayError("unknown event type " + type);
  }
  s.events.push_back(e);
}

}  // namespace

SessionLog::SessionLog(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path SessionLog::PathOf(const std::string& session_id) const {
  return dir_ / (session_id + ".jsonl");
}

bool SessionLog::Exists(const std::string& session_id) const {
  return ValidId(session_id) && fs::exists(PathOf(session_id));
}

void SessionLog::Append(const std::string& session_id, const json& event) const {
  std::ofstream out(PathOf(session_id), std::ios::app | std::ios::binary);
  out << event.dump() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to " + PathOf(session_id).string());
}

LogReadResult SessionLog::Read(const std::string& session_id) const {
  LogReadResult result;
  fs::path path = PathOf(session_id);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  size_t pos = 0, good_end = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    bool terminated = nl != std::string::npos;
    std::string line = text.substr(pos, terminated ? nl - pos : std::string::npos);
    ++line_no;
    json event = json::parse(line, nullptr, false);
    if (event.is_discarded() || !event.is_object() || !event.contains("type")) {
      if (!terminated) {
        result.warnings.push_back(path.string() + ": dropped truncated final line " +
                                  std::to_string(line_no));
        fs::resize_file(path, good_end);
        break;
      }
      result.corruption = path.string() + ": line " + std::to_string(line_no) + " is not a valid event";
      return result;
    }
    result.events.push_back(std::move(event));
    if (!terminated) {
      std::ofstream(path, std::ios::app | std::ios::binary) << '\n';
      break;
    }
    pos = nl + 1;
    good_end = pos;
  }
  return result;
}

Session ReplaySession(const std::string& session_id, const std::vector<json>& events) {
  Session s;
  s.session_id = session_id;
  for (const auto& e : events) {
    try {
      Apply(s, e);
    } catch (const json::exception& ex) {
      throw ReplayError("event " + std::to_string(s.events.size() + 1) + ": " + ex.what());
    }
  }
  if (s.events.empty()) throw ReplayError("empty session log");
  return s;
}

HintService::HintService(std::vector<TaskSpec> pack, llm::Gateway& gateway, fs::path data_dir)
    : pack_(std::move(pack)), pipeline_(gateway), log_(data_dir / "sessions") {}

Reply HintService::ListTasks() const {
  json out = json::array();
  for (const auto& t : pack_) out.push_back({{"id", t.id}, {"project", t.project_id}, {"title", t.title}});
  return {200, out};
}

Reply HintService::GetTask(const std::string& task_id) const {
  const TaskSpec* t = FindTask(pack_, task_id);
  if (!t) return Error(404, "UnknownTask", task_id);
  return {200,
          {{"id", t->id},
           {"project", t->project_id},
           {"title", t->title},
           {"description", t->description},
           {"predefinedHints", t->predefined_hints},
           {"topics", t->theory_topics}}};
}

std::shared_ptr<HintService::Slot> HintService::SlotFor(const std::string& session_id) {
  if (!ValidId(session_id)) return nullptr;
  std::lock_guard lock(slots_mu_);
  auto& slot = slots_[session_id];
  if (!slot) slot = std::make_shared<Slot>();
  return slot;
}

template <typename F>
Reply HintService::WithSession(const std::string& session_id, F&& f) {
  std::shared_ptr<Slot> slot = SlotFor(session_id);
  if (!slot) return Error(404, "UnknownSession", session_id);
  std::lock_guard lock(slot->mu);
  if (!slot->loaded) {
    if (!log_.Exists(session_id)) return Error(404, "UnknownSession", session_id);
    LogReadResult read = log_.Read(session_id);
    for (const auto& w : read.warnings) spdlog::warn("{}", w);
    if (read.corruption) {
      slot->error = *read.corruption;
    } else {
      try {
        slot->session = ReplaySession(session_id, read.events);
      } catch (const ReplayError& e) {
        slot->error = log_.PathOf(session_id).string() + ": " + e.what();
      }
    }
    if (!slot->error.empty()) spdlog::error("session {} is unrecoverable: {}", session_id, slot->error);
    slot->loaded = true;
  }
  if (!slot->error.empty()) return Error(500, "SessionUnrecoverable", slot->error);
  return f(*slot->session);
}

void HintService::Record(Session& s, json event) {
  event["seq"] = s.events.size() + 1;
  event["at"] = UtcNow();
  Session next = s;
  Apply(next, event);
  log_.Append(s.session_id, event);
  s = std::move(next);
}

Reply HintService::CreateSession(const json& body) {
  std::optional<std::string> task_id, code;
  try {
    task_id = OptionalString(body, "taskId");
    code = OptionalString(body, "code");
  } catch (const std::invalid_argument& e) {
    return Error(400, "BadRequest", e.what());
  }
  if (!task_id) return Error(400, "BadRequest", "taskId is required");
  if (!FindTask(pack_, *task_id)) return Error(404, "UnknownTask", *task_id);

  std::string id = RandomId();
  while (log_.Exists(id)) id = RandomId();
  std::shared_ptr<Slot> slot = SlotFor(id);
  std::lock_guard lock(slot->mu);
  Session s;
  s.session_id = id;
  std::string starter = code.value_or(kStarterCode);
  Record(s, {{"type", kSessionCreated}, {"taskId", *task_id}, {"code", starter}});
  slot->session = std::move(s);
  slot->loaded = true;
  return {201, {{"sessionId", id}, {"starterCode", starter}}};
}

Reply HintService::GetSession(const std::string& session_id) {
  return WithSession(session_id, [&](Session& s) -> Reply {
    json out = {{"sessionId", s.session_id},
                {"taskId", s.task_id},
                {"code", s.current_code},
                {"attempt", s.attempt},
                {"events", s.events.size()}};
    auto it = s.hints.find(s.last_hint_id);
    if (it != s.hints.end() && !it->second.accepted && !it->second.cancelled &&
        it->second.bundle.code_hint.before == s.current_code) {
      out["pendingHint"] = {{"hintId", it->first},
                            {"text", it->second.bundle.text_hint.text},
                            {"highlight", Highlight(it->second.bundle.text_hint.highlight)}};
    }
    return {200, out};
  });
}

Reply HintService::PutCode(const std::string& session_id, const json& body) {
  return WithSession(session_id, [&](Session& s) -> Reply {
    std::optional<std::string> code;
    try {
      code = OptionalString(body, "code");
    } catch (const std::invalid_argument& e) {
      return Error(400, "BadRequest", e.what());
    }
    if (!code) return Error(400, "BadRequest", "code is required");
    Record(s, {{"type", kCodeUpdated}, {"code", *code}});
    return {204, nullptr};
  });
}

Reply HintService::Hint(Session& s, const json& body, bool regenerate) {
  std::optional<std::string> errors;
  try {
    errors = OptionalString(body, "testErrors");
  } catch (const std::invalid_argument& e) {
    return Error(400, "BadRequest", e.what());
  }
  if (regenerate && !s.hint_requested) {
    return Error(409, "NoPriorHint", "request a hint for the current code first");
  }
  if (regenerate && !errors) errors = s.last_test_errors;
  const TaskSpec* task = FindTask(pack_, s.task_id);
  if (!task) return Error(404, "UnknownTask", s.task_id);

  int attempt = regenerate ? s.attempt + 1 : s.attempt;
  StudentSnapshot snapshot{s.task_id, s.current_code, errors, attempt};
  json event = {{"type", regenerate ? kHintRegenerated : kHintRequested},
                {"attempt", attempt},
                {"testErrors", errors ? json(*errors) : json(nullptr)}};
  pipeline::PipelineOutcome outcome;
  try {
    outcome = pipeline_.Generate(*task, snapshot, s.session_id);
  } catch (const std::exception& e) {
    // FixtureMiss, ProviderError, ProviderTimeout and transport failures alike.
    event["attempt"] = s.attempt;
    event["outcome"] = "ProviderFailure";
    event["message"] = e.what();
    Record(s, event);
    spdlog::warn("session {}: provider failure: {}", s.session_id, e.what());
    return Error(502, "ProviderFailure", e.what());
  }
  event["fingerprints"] = outcome.fingerprints;
  event["diagnostics"] = pipeline::DiagnosticsJson(outcome.diagnostics);
  if (!outcome.ok()) {
    std::string reason(pipeline::NoHintReasonName(outcome.no_hint->reason));
    event["outcome"] = "NoHint";
    event["reason"] = reason;
    Record(s, event);
    return {422, {{"reason", reason}, {"message", outcome.no_hint->message}}};
  }
  const HintBundle& b = *outcome.bundle;
  event["outcome"] = "Hint";
  event["bundle"] = ToJson(b);
  Record(s, event);
  return {200, {{"hintId", b.hint_id}, {"text", b.text_hint.text}, {"highlight", Highlight(b.text_hint.highlight)}}};
}

Reply HintService::RequestHint(const std::string& session_id, const json& body) {
  return WithSession(session_id, [&](Session& s) { return Hint(s, body, false); });
}

Reply HintService::Regenerate(const std::string& session_id, const json& body) {
  return WithSession(session_id, [&](Session& s) { return Hint(s, body, true); });
}

Reply HintService::GetHintCode(const std::string& session_id, const std::string& hint_id) {
  return WithSession(session_id, [&](Session& s) -> Reply {
    auto it = s.hints.find(hint_id);
    if (it == s.hints.end()) return Error(404, "UnknownHint", hint_id);
    const CodeHint& c = it->second.bundle.code_hint;
    json body = {{"hintId", hint_id},
                 {"targetFunction", c.target_function.ToString()},
                 {"before", c.before},
                 {"after", c.after},
                 {"diff", c.diff},
                 {"provenance", ProvenanceName(c.provenance)}};
    Record(s, {{"type", kCodeHintViewed}, {"hintId", hint_id}});
    return {200, body};
  });
}

Reply HintService::Accept(const std::string& session_id, const std::string& hint_id) {
  return WithSession(session_id, [&](Session& s) -> Reply {
    auto it = s.hints.find(hint_id);
    if (it == s.hints.end()) return Error(404, "UnknownHint", hint_id);
    const CodeHint& c = it->second.bundle.code_hint;
    bool repeat = it->second.accepted && s.current_code == c.after;
    if (!repeat && s.current_code != c.before) {
      return Error(409, "StaleHint", "the code changed after this hint was created");
    }
    std::string code = c.after;
    Record(s, {{"type", kHintAccepted}, {"hintId", hint_id}, {"code", code}});
    return {200, {{"code", code}}};
  });
}

Reply HintService::Cancel(const std::string& session_id, const std::string& hint_id) {
  return WithSession(session_id, [&](Session& s) -> Reply {
    if (!s.hints.count(hint_id)) return Error(404, "UnknownHint", hint_id);
    Record(s, {{"type", kHintCancelled}, {"hintId", hint_id}});
    return {204, nullptr};
  });
}

void Mount(httplib::Server& server, HintService& service, const ServerOptions& options) {
  server.set_default_headers({{"Access-Control-Allow-Origin", options.cors_origin},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    if (!r.body.is_null()) res.set_content(r.body.dump(), "application/json");
  };
  // Parses the body (empty means {}) and hands it to `f`.
  auto with_body = [send](auto f) {
    return [send, f](const httplib::Request& req, httplib::Response& res) {
      json body = req.body.empty() ? json::object() : json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        send(res, Error(400, "BadRequest", "body must be a JSON object"));
        return;
      }
      send(res, f(req, body));
    };
  };
  auto param = [](const httplib::Request& req, const char* name) { return req.path_params.at(name); };

  server.Get("/tasks", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.ListTasks());
  });
  server.Get("/tasks/:id", [&service, send, param](const httplib::Request& req, httplib::Response& res) {
    send(res, service.GetTask(param(req, "id")));
  });
  server.Post("/sessions", with_body([&service](const httplib::Request&, const json& body) {
                return service.CreateSession(body);
              }));
  server.Get("/sessions/:id", [&service, send, param](const httplib::Request& req, httplib::Response& res) {
    send(res, service.GetSession(param(req, "id")));
  });
  server.Put("/sessions/:id/code", with_body([&service, param](const httplib::Request& req, const json& body) {
               return service.PutCode(param(req, "id"), body);
             }));
  server.Post("/sessions/:id/hint", with_body([&service, param](const httplib::Request& req, const json& body) {
                return service.RequestHint(param(req, "id"), body);
              }));
  server.Post("/sessions/:id/hint/regenerate",
              with_body([&service, param](const httplib::Request& req, const json& body) {
                return service.Regenerate(param(req, "id"), body);
              }));
  server.Get("/sessions/:id/hints/:hint/code",
             [&service, send, param](const httplib::Request& req, httplib::Response& res) {
               send(res, service.GetHintCode(param(req, "id"), param(req, "hint")));
             });
  server.Post("/sessions/:id/hints/:hint/accept",
              [&service, send, param](const httplib::Request& req, httplib::Response& res) {
                send(res, service.Accept(param(req, "id"), param(req, "hint")));
              });
  server.Post("/sessions/:id/hints/:hint/cancel",
              [&service, send, param](const httplib::Request& req, httplib::Response& res) {
                send(res, service.Cancel(param(req, "id"), param(req, "hint")));
              });

  server.set_exception_handler([send](const httplib::Request& req, httplib::Response& res,
                                      std::exception_ptr ep) {
    std::string what = "unknown error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    spdlog::error("{} {}: {}", req.method, req.path, what);
    send(res, Error(500, "Internal", what));
  });
  server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
  });
}

}  // namespace stepwise::service
