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

#ifndef STEPWISE_CORE_MODEL_H_
#define STEPWISE_CORE_MODEL_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepwise/syntax/ast.h"

namespace stepwise {

struct TaskSpec {
  std::string id;
  std::string title;
  std::string description;
  std::string model_solution;
  std::vector<std::string> predefined_hints;
  std::vector<std::string> theory_topics;
  std::string project_id;
  std::vector<std::string> prior_task_ids;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct StudentSnapshot {
  std::string task_id;
  std::string code;
  std::optional<std::string> test_errors;
  int attempt = 0;

  friend bool operator==(const StudentSnapshot&, const StudentSnapshot&) = default;
};

enum class SubgoalKind { kCode, kNoCode };

struct Subgoal {
  int index = 1;
  std::string text;
  SubgoalKind kind = SubgoalKind::kCode;

  friend bool operator==(const Subgoal&, const Subgoal&) = default;
};

struct SubgoalPlan {
  std::string task_id;
  std::vector<Subgoal> subgoals;
  std::string raw_response;

  friend bool operator==(const SubgoalPlan&, const SubgoalPlan&) = default;
};

enum class Provenance { kLlmGenerated, kModelSolutionSubstituted };

std::string_view ProvenanceName(Provenance p);

struct CodeHint {
  syntax::FunctionKey target_function;
  std::string before;
  std::string after;
  // Wire form of the single retained unit and of the full before/after diff.
  nlohmann::json retained_unit;
  nlohmann::json diff;
  Provenance provenance = Provenance::kLlmGenerated;

  friend bool operator==(const CodeHint&, const CodeHint&) = default;
};

struct LineSpan {
  int start_line = 1;
  int end_line = 1;

  friend bool operator==(const LineSpan&, const LineSpan&) = default;
};

struct TextHint {
  std::string text;
  LineSpan highlight;

  friend bool operator==(const TextHint&, const TextHint&) = default;
};

struct HintBundle {
  std::string hint_id;
  std::string session_id;
  TextHint text_hint;
  CodeHint code_hint;
  SubgoalPlan subgoal_plan;
  std::string created_at;  // ISO-8601 UTC

  // Ignores created_at.
  friend bool operator==(const HintBundle& a, const HintBundle& b) {
    return a.hint_id == b.hint_id && a.session_id == b.session_id &&
           a.text_hint == b.text_hint && a.code_hint == b.code_hint &&
           a.subgoal_plan == b.subgoal_plan;
  }
};

nlohmann::json ToJson(const SubgoalPlan& plan);
nlohmann::json ToJson(const CodeHint& hint);
nlohmann::json ToJson(const TextHint& hint);
nlohmann::json ToJson(const HintBundle& bundle);
SubgoalPlan SubgoalPlanFromJson(const nlohmann::json& j);
CodeHint CodeHintFromJson(const nlohmann::json& j);
TextHint TextHintFromJson(const nlohmann::json& j);
HintBundle HintBundleFromJson(const nlohmann::json& j);

std::string UtcNow();
std::string RandomId();

// --- task packs -------------------------------------------------------------

struct ValidationEntry {
  std::string task_id;
  std::string message;
  int line = 0;  // parse errors only
  int column = 0;
};

struct ValidationReport {
  std::vector<ValidationEntry> errors;
  bool accepted() const { return errors.empty(); }
};

ValidationReport ValidateTaskPack(const std::vector<TaskSpec>& pack);

class TaskPackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads `<dir>/<task>/{task.md,solution.kt,meta.json}` for every task
// directory, sorted by directory name. Throws TaskPackError.
std::vector<TaskSpec> LoadTaskPack(const std::filesystem::path& dir);
void SaveTask(const TaskSpec& task, const std::filesystem::path& dir);

const TaskSpec* FindTask(const std::vector<TaskSpec>& pack, std::string_view id);

}  // namespace stepwise

#endif  // STEPWISE_CORE_MODEL_H_
