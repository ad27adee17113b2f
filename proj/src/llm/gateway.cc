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

#include "stepwise/llm/gateway.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace stepwise::llm {

namespace fs = std::filesystem;
using nlohmann::json;

std::atomic<long> HttpTransport::requests_{0};

namespace {

json EntryToJson(const FixtureEntry& e) {
  return json{{"fingerprint", e.fingerprint},
              {"taskId", e.task_id},
              {"stage", prompts::StageName(e.stage)},
              {"request", e.request_text},
              {"response", e.response_text},
              {"recordedAt", e.recorded_at}};
}

FixtureEntry EntryFromJson(const json& j) {
  FixtureEntry e;
  e.fingerprint = j.at("fingerprint").get<std::string>();
  e.task_id = j.value("taskId", "");
  auto stage = prompts::StageFromName(j.at("stage").get<std::string>());
  if (!stage) throw std::invalid_argument("unknown stage " + j.at("stage").get<std::string>());
  e.stage = *stage;
  e.request_text = j.at("request").get<std::string>();
  e.response_text = j.at("response").get<std::string>();
  e.recorded_at = j.value("recordedAt", "");
  if (e.fingerprint.empty()) throw std::invalid_argument("empty fingerprint");
  return e;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw FixtureError("cannot read " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FixtureError("cannot write " + p.string());
    out << text;
  }
  fs::rename(tmp, p);
}

void Insert(FixtureSet& set, FixtureEntry e, size_t index, const fs::path& where) {
  if (set.count(e.fingerprint)) {
    throw FixtureError("fixture entry #" + std::to_string(index) + " (" + where.string() +
                       "): duplicate fingerprint " + e.fingerprint);
  }
  std::string key = e.fingerprint;
  set.emplace(std::move(key), std::move(e));
}

std::string TaskDir(const std::string& task_id) { return task_id.empty() ? "_" : task_id; }

bool Transient(const HttpResponse& r) {
  return r.timed_out || r.status == 0 || r.status == 429 || r.status >= 500;
}

}  // namespace

std::string_view ModeName(ProviderMode mode) {
  switch (mode) {
    case ProviderMode::kReplay: return "replay";
    case ProviderMode::kRecord: return "record";
    case ProviderMode::kLive: return "live";
  }
  return "?";
}

std::optional<ProviderMode> ModeFromName(std::string_view name) {
  for (ProviderMode m : {ProviderMode::kReplay, ProviderMode::kRecord, ProviderMode::kLive}) {
    if (ModeName(m) == name) return m;
  }
  return std::nullopt;
}

FixtureSet LoadFixtures(const fs::path& path) {
  FixtureSet set;
  if (!fs::exists(path)) return set;
  if (fs::is_regular_file(path)) {
    json all;
    try {
      all = json::parse(ReadFile(path));
    } catch (const json::exception& e) {
      throw FixtureError(path.string() + ": " + e.what());
    }
    if (!all.is_array()) throw FixtureError(path.string() + ": expected an array of entries");
    for (size_t i = 0; i < all.size(); ++i) {
      try {
        Insert(set, EntryFromJson(all[i]), i, path);
      } catch (const FixtureError&) {
        throw;
      } catch (const std::exception& e) {
        throw FixtureError("fixture entry #" + std::to_string(i) + " (" + path.string() +
                           "): " + e.what());
      }
    }
    return set;
  }
  std::vector<fs::path> files;
  for (const auto& f : fs::recursive_directory_iterator(path)) {
    if (f.is_regular_file() && f.path().extension() == ".json") files.push_back(f.path());
  }
  std::sort(files.begin(), files.end());
  for (size_t i = 0; i < files.size(); ++i) {
    FixtureEntry e;
    try {
      e = EntryFromJson(json::parse(ReadFile(files[i])));
    } catch (const std::exception& ex) {
      throw FixtureError("fixture entry #" + std::to_string(i) + " (" + files[i].string() +
                         "): " + ex.what());
    }
    if (files[i].stem() != e.fingerprint) {
      throw FixtureError("fixture entry #" + std::to_string(i) + " (" + files[i].string() +
                         "): file name does not match fingerprint " + e.fingerprint);
    }
    Insert(set, std::move(e), i, files[i]);
  }
  return set;
}

void SaveFixture(const FixtureEntry& entry, const fs::path& dir) {
  WriteFile(dir / TaskDir(entry.task_id) / (entry.fingerprint + ".json"),
            EntryToJson(entry).dump(2) + "\n");
}

void SaveFixtures(const FixtureSet& set, const fs::path& path) {
  if (path.extension() == ".json") {
    json all = json::array();
    for (const auto& [fp, e] : set) all.push_back(EntryToJson(e));
    WriteFile(path, all.dump(2) + "\n");
    return;
  }
  for (const auto& [fp, e] : set) SaveFixture(e, path);
}

HttpResponse HttpTransport::Post(const std::string& url, const std::string& body,
                                 const std::vector<std::pair<std::string, std::string>>& headers,
                                 double timeout_seconds) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) throw ProviderError(0, "bad endpoint URL " + url);
  ++requests_;
  httplib::Client client(m[1].str());
  auto secs = static_cast<time_t>(timeout_seconds);
  auto usecs = static_cast<time_t>((timeout_seconds - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  std::string target = m[2].matched ? m[2].str() : "/";
  auto res = client.Post(target, h, body, "application/json");
  HttpResponse out;
  if (!res) {
    out.timed_out = res.error() == httplib::Error::Read || res.error() == httplib::Error::Write ||
                    res.error() == httplib::Error::ConnectionTimeout;
    out.body = httplib::to_string(res.error());
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  return out;
}

std::string ChatRequestBody(const std::string& model, const std::string& prompt) {
  json body = {{"model", model},
               {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
               {"temperature", 0}};
  return body.dump();
}

Gateway::Gateway(ProviderConfig config, std::shared_ptr<Transport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  if (!transport_) transport_ = std::make_shared<HttpTransport>();
  if (config_.mode != ProviderMode::kLive) {
    if (config_.fixture_path.empty()) throw FixtureError("fixture path required");
    fixtures_ = LoadFixtures(config_.fixture_path);
  }
}

std::string Gateway::Complete(const prompts::PromptRequest& request) {
  if (config_.mode == ProviderMode::kReplay) {
    std::lock_guard lock(mu_);
    auto it = fixtures_.find(request.fingerprint);
    if (it == fixtures_.end()) throw FixtureMiss(request.fingerprint);
    return it->second.response_text;
  }
  std::string text = CallProvider(request);
  if (config_.mode == ProviderMode::kRecord) {
    FixtureEntry e;
    e.fingerprint = request.fingerprint;
    e.task_id = request.task_id;
    e.stage = request.stage;
    e.request_text = request.rendered_text;
    e.response_text = text;
    e.recorded_at = UtcNow();
    std::lock_guard lock(mu_);
    SaveFixture(e, config_.fixture_path);
    fixtures_[e.fingerprint] = std::move(e);
  }
  return text;
}

std::string Gateway::CallProvider(const prompts::PromptRequest& request) {
  std::vector<std::pair<std::string, std::string>> headers;
  if (const char* token = std::getenv(config_.token_env.c_str()); token && *token) {
    headers.emplace_back("Authorization", std::string("Bearer ") + token);
  }
  std::string body = ChatRequestBody(config_.model, request.rendered_text);
  HttpResponse last;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    last = transport_->Post(config_.endpoint, body, headers, config_.timeout_seconds);
    if (last.status >= 200 && last.status < 300) {
      try {
        json reply = json::parse(last.body);
        return reply.at(json::json_pointer(config_.response_pointer)).get<std::string>();
      } catch (const json::exception& e) {
        throw ProviderError(last.status, std::string("unexpected response body: ") + e.what());
      }
    }
    if (!Transient(last)) break;
    if (attempt < config_.max_retries) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200 * (attempt + 1)));
    }
  }
  if (last.timed_out) throw ProviderTimeout("provider timed out: " + last.body);
  throw ProviderError(last.status, last.body.substr(0, 500));
}

}  // namespace stepwise::llm
