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

#include "stepwise/core/model.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "stepwise/syntax/parser.h"

namespace stepwise {

using nlohmann::json;

std::string_view ProvenanceName(Provenance p) {
  return p == Provenance::kLlmGenerated ? "LlmGenerated" : "ModelSolutionSubstituted";
}

namespace {

Provenance ProvenanceFromName(std::string_view name) {
  if (name == "LlmGenerated") return Provenance::kLlmGenerated;
  if (name == "ModelSolutionSubstituted") return Provenance::kModelSolutionSubstituted;
  throw std::invalid_argument("unknown provenance: " + std::string(name));
}

syntax::FunctionKey KeyFromString(const std::string& s) {
  auto slash = s.rfind('/');
  if (slash == std::string::npos) throw std::invalid_argument("bad function key: " + s);
  return {s.substr(0, slash), std::stoi(s.substr(slash + 1))};
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TaskPackError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string TitleOf(const std::string& description) {
  std::istringstream in(description);
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of("# \t");
    if (start == std::string::npos) continue;
    size_t end = line.find_last_not_of(" \t\r");
    return line.substr(start, end - start + 1);
  }
  return "";
}

}  // namespace

json ToJson(const SubgoalPlan& plan) {
  json subgoals = json::array();
  for (const auto& s : plan.subgoals) {
    subgoals.push_back({{"index", s.index},
                        {"text", s.text},
                        {"kind", s.kind == SubgoalKind::kCode ? "Code" : "NoCode"}});
  }
  return {{"taskId", plan.task_id}, {"subgoals", subgoals}, {"rawResponse", plan.raw_response}};
}

json ToJson(const CodeHint& hint) {
  return {{"targetFunction", hint.target_function.ToString()},
          {"before", hint.before},
          {"after", hint.after},
          {"retainedUnit", hint.retained_unit},
          {"diff", hint.diff},
          {"provenance", ProvenanceName(hint.provenance)}};
}

json ToJson(const TextHint& hint) {
  return {{"text", hint.text},
          {"highlight",
           {{"startLine", hint.highlight.start_line}, {"endLine", hint.highlight.end_line}}}};
}

json ToJson(const HintBundle& bundle) {
  return {{"hintId", bundle.hint_id},
          {"sessionId", bundle.session_id},
          {"textHint", ToJson(bundle.text_hint)},
          {"codeHint", ToJson(bundle.code_hint)},
          {"subgoalPlan", ToJson(bundle.subgoal_plan)},
          {"createdAt", bundle.created_at}};
}

SubgoalPlan SubgoalPlanFromJson(const json& j) {
  SubgoalPlan plan;
  plan.task_id = j.at("taskId");
  plan.raw_response = j.at("rawResponse");
  for (const auto& s : j.at("subgoals")) {
    plan.subgoals.push_back({s.at("index"), s.at("text"),
                             s.at("kind") == "Code" ? SubgoalKind::kCode : SubgoalKind::kNoCode});
  }
  return plan;
}

CodeHint CodeHintFromJson(const json& j) {
  CodeHint hint;
  hint.target_function = KeyFromString(j.at("targetFunction"));
  hint.before = j.at("before");
  hint.after = j.at("after");
  hint.retained_unit = j.at("retainedUnit");
  hint.diff = j.at("diff");
  hint.provenance = ProvenanceFromName(j.at("provenance").get<std::string>());
  return hint;
}

TextHint TextHintFromJson(const json& j) {
  return {j.at("text"), {j.at("highlight").at("startLine"), j.at("highlight").at("endLine")}};
}

HintBundle HintBundleFromJson(const json& j) {
  HintBundle b;
  b.hint_id = j.at("hintId");
  b.session_id = j.at("sessionId");
  b.text_hint = TextHintFromJson(j.at("textHint"));
  b.code_hint = CodeHintFromJson(j.at("codeHint"));
  b.subgoal_plan = SubgoalPlanFromJson(j.at("subgoalPlan"));
  b.created_at = j.at("createdAt");
  return b;
}

std::string UtcNow() {
  auto now = std::chrono::system_clock::now();
  std::time_t secs = std::chrono::system_clock::to_time_t(now);
  int millis = static_cast<int>(
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  size_t n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  std::snprintf(buf + n, sizeof buf - n, ".%03dZ", millis);
  return buf;
}

std::string RandomId() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

ValidationReport ValidateTaskPack(const std::vector<TaskSpec>& pack) {
  ValidationReport report;
  std::set<std::string> ids, reported;
  for (const auto& t : pack) {
    if (!ids.insert(t.id).second && reported.insert(t.id).second) {
      report.errors.push_back({t.id, "duplicate task id \"" + t.id + "\""});
    }
  }
  for (const auto& t : pack) {
    for (const auto& prior : t.prior_task_ids) {
      if (!ids.count(prior)) {
        report.errors.push_back({t.id, "prior task \"" + prior + "\" is not in the pack"});
      }
    }
    if (t.theory_topics.empty()) report.errors.push_back({t.id, "no theory topics"});
    try {
      syntax::Parse(t.model_solution);
    } catch (const syntax::SyntaxError& e) {
      report.errors.push_back(
          {t.id, "model solution does not parse: " + std::string(e.what()), e.line(), e.column()});
    }
  }
  return report;
}

std::vector<TaskSpec> LoadTaskPack(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw TaskPackError("task pack not found: " + dir.string());
  std::vector<fs::path> tasks;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "meta.json")) tasks.push_back(entry.path());
  }
  std::sort(tasks.begin(), tasks.end());
  std::vector<TaskSpec> pack;
  for (const auto& path : tasks) {
    TaskSpec t;
    json meta;
    try {
      meta = json::parse(ReadFile(path / "meta.json"));
      t.id = meta.at("id");
      t.project_id = meta.at("project");
      t.prior_task_ids = meta.at("priorTasks").get<std::vector<std::string>>();
      t.theory_topics = meta.at("topics").get<std::vector<std::string>>();
      t.predefined_hints = meta.at("predefinedHints").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw TaskPackError((path / "meta.json").string() + ": " + e.what());
    }
    t.description = ReadFile(path / "task.md");
    t.model_solution = ReadFile(path / "solution.kt");
    t.title = TitleOf(t.description);
    pack.push_back(std::move(t));
  }
  return pack;
}

void SaveTask(const TaskSpec& task, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json meta = {{"id", task.id},
               {"project", task.project_id},
               {"priorTasks", task.prior_task_ids},
               {"topics", task.theory_topics},
               {"predefinedHints", task.predefined_hints}};
  std::ofstream(dir / "meta.json") << meta.dump(2) << "\n";
  std::ofstream(dir / "task.md") << task.description;
  std::ofstream(dir / "solution.kt") << task.model_solution;
}

const TaskSpec* FindTask(const std::vector<TaskSpec>& pack, std::string_view id) {
  for (const auto& t : pack) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

}  // namespace stepwise
