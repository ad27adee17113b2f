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

#ifndef STEPWISE_PROMPTS_PROMPT_KIT_H_
#define STEPWISE_PROMPTS_PROMPT_KIT_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stepwise/core/model.h"
#include "stepwise/syntax/ast.h"

namespace stepwise::prompts {

inline constexpr std::string_view kTemplateVersion = "v1";
inline constexpr int kMinSubgoals = 6;
inline constexpr int kMaxHintSentences = 3;

enum class Stage { kSubgoals, kCodeHint, kTextHint };

std::string_view StageName(Stage stage);
std::optional<Stage> StageFromName(std::string_view name);

struct PromptRequest {
  Stage stage = Stage::kSubgoals;
  std::string task_id;  // groups fixtures; not part of the fingerprint
  std::string rendered_text;
  int attempt = 0;
  std::string fingerprint;

  friend bool operator==(const PromptRequest&, const PromptRequest&) = default;
};

// Lowercase hex SHA-256 over the template version, stage, text and attempt.
std::string Fingerprint(Stage stage, std::string_view rendered_text, int attempt);

class MalformedResponse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnparseableHintCode : public MalformedResponse {
 public:
  using MalformedResponse::MalformedResponse;
};

class EmptyResponse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `student_code` may be empty. Throws syntax::SyntaxError if it does not parse.
PromptRequest BuildSubgoalPrompt(const TaskSpec& task, std::string_view student_code,
                                 std::string_view language_name = "Kotlin", int attempt = 0);

SubgoalPlan ParseSubgoalResponse(std::string_view text, std::string_view task_id = "");

// Numbered `[code]`/`[no-code]` lines; ParseSubgoalResponse inverts it.
std::string RenderPlan(const SubgoalPlan& plan);

// Only Code subgoals, renumbered from 1. raw_response is kept.
SubgoalPlan FilterCodeSubgoals(const SubgoalPlan& plan);

// Throws std::invalid_argument if `plan` holds a NoCode subgoal.
PromptRequest BuildCodeHintPrompt(const SubgoalPlan& plan, std::string_view task_id,
                                  std::string_view student_code,
                                  const std::optional<std::string>& test_errors,
                                  std::string_view language_name = "Kotlin", int attempt = 0);

struct CodeResponse {
  std::string code;
  syntax::SourceModule module;
  std::vector<std::string> warnings;
};

CodeResponse ParseCodeResponse(std::string_view text);

PromptRequest BuildTextHintPrompt(std::string_view task_id, std::string_view student_code,
                                  const CodeHint& improved,
                                  std::string_view language_name = "Kotlin", int attempt = 0);

// Fences removed, whitespace collapsed, at most three sentences. The
// highlight is where the hint's change lands in `hint.before`.
TextHint ParseTextResponse(std::string_view text, const CodeHint& hint);

// Same request with a note asking for the expected format; new fingerprint.
PromptRequest Reask(const PromptRequest& request);

}  // namespace stepwise::prompts

#endif  // STEPWISE_PROMPTS_PROMPT_KIT_H_
