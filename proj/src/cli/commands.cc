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

#include "stepwise/cli/commands.h"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "httplib.h"
#include "stepwise/eval/harness.h"
#include "stepwise/service/service.h"

namespace stepwise::cli {

namespace fs = std::filesystem;

namespace {

httplib::Server* g_server = nullptr;

void StopServer(int) {
  if (g_server) g_server->stop();
}

// Loads and validates the pack; reports problems to `err`.
std::optional<std::vector<TaskSpec>> LoadPack(const fs::path& dir, std::ostream& err) {
  std::vector<TaskSpec> pack;
  try {
    pack = LoadTaskPack(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  ValidationReport report = ValidateTaskPack(pack);
  for (const auto& e : report.errors) {
    err << "error: task " << e.task_id << ": " << e.message;
    if (e.line) err << " (line " << e.line << ", column " << e.column << ")";
    err << "\n";
  }
  if (!report.accepted()) return std::nullopt;
  return pack;
}

std::optional<llm::ProviderConfig> MakeConfig(const ProviderFlags& flags, std::ostream& err) {
  llm::ProviderConfig c;
  auto mode = llm::ModeFromName(flags.mode);
  if (!mode) {
    err << "error: unknown provider mode '" << flags.mode << "' (replay, record or live)\n";
    return std::nullopt;
  }
  c.mode = *mode;
  c.fixture_path = flags.fixtures;
  c.endpoint = flags.endpoint;
  c.model = flags.model;
  c.token_env = flags.token_env;
  c.timeout_seconds = flags.timeout_seconds;
  if (c.mode != llm::ProviderMode::kLive && c.fixture_path.empty()) {
    err << "error: --fixtures is required in " << flags.mode << " mode\n";
    return std::nullopt;
  }
  if (c.mode != llm::ProviderMode::kReplay) {
    if (c.endpoint.empty()) {
      err << "error: --endpoint is required in " << flags.mode << " mode\n";
      return std::nullopt;
    }
    const char* token = std::getenv(c.token_env.c_str());
    if (!token || !*token) {
      err << "error: " << c.token_env << " is not set\n";
      return std::nullopt;
    }
  }
  return c;
}

bool WriteFile(const fs::path& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

std::vector<eval::SnapshotCase> Snapshots(const fs::path& dir, std::ostream& err, bool& ok) {
  ok = true;
  try {
    return eval::LoadSnapshots(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    ok = false;
    return {};
  }
}

}  // namespace

int Serve(const ServeOptions& options, std::ostream& out, std::ostream& err) {
  auto pack = LoadPack(options.task_pack, err);
  if (!pack) return kUsage;
  auto config = MakeConfig(options.provider, err);
  if (!config) return kUsage;
  std::unique_ptr<llm::Gateway> gateway;
  try {
    gateway = std::make_unique<llm::Gateway>(*config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::unique_ptr<service::HintService> svc;
  try {
    svc = std::make_unique<service::HintService>(*pack, *gateway, options.data_dir);
  } catch (const std::exception& e) {
    err << "error: data directory: " << e.what() << "\n";
    return kEnvironment;
  }

  httplib::Server server;
  // httplib defaults to SO_REUSEPORT, which would let two servers share a port.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  service::Mount(server, *svc, {options.host, options.cors_origin});
  if (!server.bind_to_port(options.host, options.port)) {
    err << "error: cannot listen on " << options.host << ":" << options.port
        << " (port in use?)\n";
    return kEnvironment;
  }
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  out << "serving " << pack->size() << " tasks on http://" << options.host << ":" << options.port
      << " (" << options.provider.mode << ")" << std::endl;
  bool ok = server.listen_after_bind();
  g_server = nullptr;
  return ok ? kOk : kEnvironment;
}

int Eval(const EvalOptions& options, std::ostream& out, std::ostream& err,
         std::shared_ptr<llm::Transport> transport) {
  auto pack = LoadPack(options.task_pack, err);
  if (!pack) return kUsage;
  bool ok = true;
  auto cases = Snapshots(options.snapshots, err, ok);
  if (!ok) return kUsage;

  llm::ProviderConfig config;
  config.mode = llm::ProviderMode::kReplay;
  config.fixture_path = options.fixtures;
  std::unique_ptr<llm::Gateway> gateway;
  try {
    gateway = std::make_unique<llm::Gateway>(config, std::move(transport));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  eval::EvaluationReport report = eval::RunCorpus(*pack, cases, *gateway);
  std::error_code ec;
  fs::create_directories(options.out, ec);
  if (ec) {
    err << "error: cannot create " << options.out.string() << ": " << ec.message() << "\n";
    return kEnvironment;
  }
  if (!WriteFile(options.out / "report.json", eval::ReportJson(report, UtcNow()).dump(2) + "\n", err) ||
      !WriteFile(options.out / "report.csv", eval::ReportCsv(report), err)) {
    return kEnvironment;
  }

  int hints = 0;
  for (const auto& r : report.rows) hints += r.outcome == "Hint";
  out << report.rows.size() << " snapshots, " << hints << " hints, " << report.violation_count()
      << " invariant violations, " << report.error_count() << " errors\n";
  for (const auto& r : report.rows) {
    for (const auto& v : r.violations) err << "violation: " << r.id << ": " << v << "\n";
    if (r.outcome == "Error") err << "error: " << r.id << ": " << r.reason << ": " << r.message << "\n";
  }
  for (const auto& fp : report.missing_fingerprints) err << "missing fixture: " << fp << "\n";
  return report.violation_count() == 0 && report.error_count() == 0 ? kOk : kViolations;
}

int Record(const RecordOptions& options, std::ostream& out, std::ostream& err,
           std::shared_ptr<llm::Transport> transport) {
  ProviderFlags flags = options.provider;
  flags.mode = "record";
  flags.fixtures = options.out;
  auto config = MakeConfig(flags, err);
  if (!config) return kUsage;
  auto pack = LoadPack(options.task_pack, err);
  if (!pack) return kUsage;
  bool ok = true;
  auto cases = Snapshots(options.snapshots, err, ok);
  if (!ok) return kUsage;

  std::unique_ptr<llm::Gateway> gateway;
  try {
    fs::create_directories(options.out);
    gateway = std::make_unique<llm::Gateway>(*config, std::move(transport));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  eval::EvaluationReport report = eval::RunCorpus(*pack, cases, *gateway);
  int failed = 0;
  for (const auto& r : report.rows) {
    if (r.outcome == "Error") {
      ++failed;
      err << "failed: " << r.id << ": " << r.message << "\n";
    }
  }
  out << "recorded " << report.rows.size() - failed << " of " << report.rows.size()
      << " snapshots into " << options.out.string() << "\n";
  return failed == 0 ? kOk : kViolations;
}

}  // namespace stepwise::cli
