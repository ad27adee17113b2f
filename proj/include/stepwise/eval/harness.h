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

#ifndef STEPWISE_EVAL_HARNESS_H_
#define STEPWISE_EVAL_HARNESS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepwise/core/model.h"
#include "stepwise/llm/gateway.h"

namespace stepwise::eval {

struct LineCounts {
  int added = 0;
  int changed = 0;
  int deleted = 0;

  friend bool operator==(const LineCounts&, const LineCounts&) = default;
};

// Line diff over trimmed non-blank lines. Inside each run of edits between
// matching lines, min(deleted, inserted) lines count as changed.
LineCounts CountLineChanges(std::string_view before, std::string_view after);

// The same counts summed over the units of a serialized ChangeSet.
LineCounts CountUnitLines(const nlohmann::json& change_set);

struct HintMetrics {
  int subgoal_amount = 0;
  bool no_code_leak = false;
  int text_words = 0;
  int text_sentences = 0;
  int code_added = 0;
  int code_changed = 0;
  int code_deleted = 0;
  std::optional<double> intersection_ratio;  // absent when nothing added or changed
  bool parses = false;
  bool inspection_clean = false;
  bool single_step = false;

  friend bool operator==(const HintMetrics&, const HintMetrics&) = default;
};

HintMetrics ScoreHint(const HintBundle& bundle, const StudentSnapshot& snapshot);
nlohmann::json ToJson(const HintMetrics& m);

struct SnapshotCase {
  std::string id;  // "<taskId>/<name>"
  StudentSnapshot snapshot;
};

// `<dir>/<taskId>/<name>.kt` with optional `<name>.errors.txt`, sorted by id.
std::vector<SnapshotCase> LoadSnapshots(const std::filesystem::path& dir);

struct ReportRow {
  std::string id;
  std::string task_id;
  std::string outcome;  // "Hint", "NoHint" or "Error"
  std::string reason;   // NoHint reason or error kind
  std::string message;
  std::string heuristic;
  std::vector<std::string> inspections;
  std::vector<std::string> fingerprints;
  std::optional<HintMetrics> metrics;
  std::optional<TextHint> text_hint;
  std::optional<CodeHint> code_hint;
  std::vector<std::string> violations;
};

struct EvaluationReport {
  std::vector<ReportRow> rows;
  std::vector<std::string> missing_fingerprints;

  int violation_count() const;
  int error_count() const;
};

EvaluationReport RunCorpus(const std::vector<TaskSpec>& pack,
                           const std::vector<SnapshotCase>& snapshots, llm::Gateway& gateway);

nlohmann::json ReportJson(const EvaluationReport& report, const std::string& generated_at);
std::string ReportCsv(const EvaluationReport& report);

}  // namespace stepwise::eval

#endif  // STEPWISE_EVAL_HARNESS_H_
