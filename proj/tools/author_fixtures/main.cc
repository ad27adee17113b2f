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

// Builds replay fixtures from hand-written provider replies.
//
// Each snapshot `<snapshots>/<task>/<name>.kt` may have a script
// `<scripts>/<task>/<name>.json` mapping a stage name to the replies to give,
// in order, for that stage. The last reply repeats.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "stepwise/eval/harness.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stepwise;

namespace {

class ScriptTransport : public llm::Transport {
 public:
  void Load(json script) {
    script_ = std::move(script);
    used_.clear();
  }

  llm::HttpResponse Post(const std::string&, const std::string& body,
                         const std::vector<std::pair<std::string, std::string>>&, double) override {
    std::string prompt = json::parse(body).at("messages").at(0).at("content");
    std::string stage = prompt.find("## Improved code") != std::string::npos ? "TextHint"
                        : prompt.find("## Subgoals") != std::string::npos ? "CodeHint"
                                                                           : "Subgoals";
    if (!script_.contains(stage) || script_[stage].empty()) return {500, "no reply scripted for " + stage, false};
    const json& replies = script_[stage];
    size_t i = std::min(used_[stage]++, replies.size() - 1);
    json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", replies[i]}}}}}}};
    return {200, reply.dump(), false};
  }

 private:
  json script_;
  std::map<std::string, size_t> used_;
};

int Author(const fs::path& pack_dir, const fs::path& snapshots, const fs::path& scripts, const fs::path& out) {
  auto pack = LoadTaskPack(pack_dir);
  auto cases = eval::LoadSnapshots(snapshots);
  fs::remove_all(out);
  fs::create_directories(out);
  auto transport = std::make_shared<ScriptTransport>();
  llm::ProviderConfig config;
  config.mode = llm::ProviderMode::kRecord;
  config.endpoint = "script://local";
  config.fixture_path = out;
  config.max_retries = 0;
  llm::Gateway gateway(config, transport);
  int failed = 0;
  for (const auto& c : cases) {
    fs::path script = scripts / (c.id + ".json");
    transport->Load(fs::exists(script) ? json::parse(std::ifstream(script)) : json::object());
    eval::EvaluationReport r = eval::RunCorpus(pack, {c}, gateway);
    const auto& row = r.rows.at(0);
    std::cout << c.id << ": " << row.outcome << (row.reason.empty() ? "" : " " + row.reason) << "\n";
    if (row.outcome == "Error") {
      std::cerr << "  " << row.message << "\n";
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Author replay fixtures from scripted replies"};
  fs::path pack, snapshots, scripts, out;
  bool check = false;
  app.add_option("--task-pack", pack)->required();
  app.add_option("--snapshots", snapshots)->required();
  app.add_option("--scripts", scripts)->required();
  app.add_option("--out", out, "Fixture directory")->required();
  app.add_flag("--check", check, "Compare against --out instead of writing it");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!check) return Author(pack, snapshots, scripts, out);
    fs::path tmp = fs::temp_directory_path() / ("stepwise-fx-" + RandomId());
    int rc = Author(pack, snapshots, scripts, tmp);
    llm::FixtureSet fresh = llm::LoadFixtures(tmp), shipped = llm::LoadFixtures(out);
    fs::remove_all(tmp);
    int drift = 0;
    for (const auto& [fp, e] : fresh) {
      auto it = shipped.find(fp);
      if (it == shipped.end()) {
        std::cerr << "missing from " << out.string() << ": " << e.task_id << " " << fp << "\n";
        ++drift;
      } else if (it->second.response_text != e.response_text || it->second.request_text != e.request_text) {
        std::cerr << "differs: " << fp << "\n";
        ++drift;
      }
    }
    for (const auto& [fp, e] : shipped) {
      if (!fresh.count(fp)) {
        std::cerr << "stale fixture: " << e.task_id << " " << fp << "\n";
        ++drift;
      }
    }
    std::cout << fresh.size() << " fixtures, " << drift << " out of date\n";
    return rc != 0 || drift != 0 ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
