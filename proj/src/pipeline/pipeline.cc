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

#include "stepwise/pipeline/pipeline.h"

#include <algorithm>
#include <functional>

#include "stepwise/core/text.h"
#include "stepwise/diff/ast_diff.h"
#include "stepwise/hints/postprocessor.h"
#include "stepwise/prompts/prompt_kit.h"
#include "stepwise/syntax/parser.h"

namespace stepwise::pipeline {

namespace {

using prompts::PromptRequest;

syntax::SourceModule ParseOrEmpty(const std::string& code) {
  return Trim(code).empty() ? syntax::SourceModule{} : syntax::Parse(code);
}

// Thrown inside Generate when a stage stays malformed after the re-ask.
struct FormatFailure {
  std::string message;
};

class Run {
 public:
  Run(llm::Gateway& gateway, PipelineOutcome& out) : gateway_(gateway), out_(out) {}

  void Log(std::string stage, std::string event, std::string detail = "") {
    out_.diagnostics.push_back({std::move(stage), std::move(event), std::move(detail)});
  }

  // Completes `request` and parses the reply; one re-ask on a format error.
  template <typename T>
  T Ask(const PromptRequest& request, const std::function<T(const std::string&)>& parse) {
    std::string stage(prompts::StageName(request.stage));
    PromptRequest current = request;
    for (int round = 0; round < 2; ++round) {
      out_.fingerprints.push_back(current.fingerprint);
      Log(stage, round == 0 ? "prompt" : "reask-prompt", current.fingerprint);
      std::string reply = gateway_.Complete(current);
      try {
        return parse(reply);
      } catch (const prompts::MalformedResponse& e) {
        Log(stage, "malformed", e.what());
        if (round == 1) throw FormatFailure{stage + ": " + e.what()};
      } catch (const prompts::EmptyResponse& e) {
        Log(stage, "malformed", e.what());
        if (round == 1) throw FormatFailure{stage + ": " + e.what()};
      }
      current = prompts::Reask(request);
    }
    throw FormatFailure{stage};
  }

 private:
  llm::Gateway& gateway_;
  PipelineOutcome& out_;
};

int LineCount(const std::string& text) { return static_cast<int>(SplitLines(text).size()); }

}  // namespace

std::string_view NoHintReasonName(NoHintReason reason) {
  switch (reason) {
    case NoHintReason::kSyntaxError: return "SyntaxError";
    case NoHintReason::kProviderFormat: return "ProviderFormat";
    case NoHintReason::kAlreadyConverged: return "AlreadyConverged";
    case NoHintReason::kInvariantViolation: return "InvariantViolation";
  }
  return "?";
}

nlohmann::json ToJson(const StageEvent& e) {
  nlohmann::json j = {{"stage", e.stage}, {"event", e.event}};
  if (!e.detail.empty()) j["detail"] = e.detail;
  return j;
}

nlohmann::json DiagnosticsJson(const std::vector<StageEvent>& events) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : events) out.push_back(ToJson(e));
  return out;
}

std::vector<std::string> CheckBundle(const HintBundle& bundle, const TaskSpec& task,
                                     const StudentSnapshot& snapshot) {
  std::vector<std::string> v;
  const CodeHint& code = bundle.code_hint;
  if (code.before != snapshot.code) v.push_back("code hint is not based on the snapshot");

  syntax::SourceModule before, after, model;
  try {
    before = ParseOrEmpty(code.before);
    model = syntax::Parse(task.model_solution);
  } catch (const syntax::SyntaxError& e) {
    v.push_back(std::string("input does not parse: ") + e.what());
    return v;
  }
  try {
    after = syntax::Parse(code.after);
  } catch (const syntax::SyntaxError& e) {
    v.push_back(std::string("hint code does not parse: ") + e.what());
    return v;
  }

  diff::ChangeSet changes = diff::DiffModules(before, after);
  if (changes.UnitCount() != 1) {
    v.push_back("hint has " + std::to_string(changes.UnitCount()) + " change units");
  }
  if (!changes.empty()) {
    hints::ScopeSet scope = hints::ComputeScope(before, model);
    for (const auto& fc : changes.functions) {
      if (!scope.contains(fc.function)) v.push_back("hint changes out-of-scope " + fc.function.ToString());
    }
    if (changes.functions[0].function != code.target_function) {
      v.push_back("hint changes " + changes.functions[0].function.ToString() + " instead of " +
                  code.target_function.ToString());
    }
    const diff::ChangeUnit unit = changes.AllUnits().front();
    if (auto span = hints::UnitLinesInAfter(before, after, unit)) {
      if (int n = hints::CommentsInLines(after, *span); n > 0) {
        v.push_back(std::to_string(n) + " comments in the changed region");
      }
    }
    LineSpan changed = hints::UnitLinesInBefore(before, code.before, unit);
    const LineSpan& h = bundle.text_hint.highlight;
    if (h.end_line < changed.start_line - 1 || h.start_line > changed.end_line + 1) {
      v.push_back("highlight is not next to the change");
    }
  }

  const TextHint& text = bundle.text_hint;
  if (text.text.find("```") != std::string::npos) v.push_back("text hint contains a code fence");
  if (text.text.find('\n') != std::string::npos) v.push_back("text hint spans several lines");
  size_t sentences = SplitSentences(text.text).size();
  if (sentences < 1 || sentences > static_cast<size_t>(prompts::kMaxHintSentences)) {
    v.push_back("text hint has " + std::to_string(sentences) + " sentences");
  }
  const LineSpan& h = text.highlight;
  if (h.start_line < 1 || h.end_line < h.start_line || h.end_line > LineCount(code.before) + 1) {
    v.push_back("highlight out of bounds");
  }
  for (const auto& s : bundle.subgoal_plan.subgoals) {
    if (s.kind != SubgoalKind::kCode) v.push_back("no-code subgoal survived filtering");
  }
  return v;
}

Pipeline::Pipeline(llm::Gateway& gateway, std::string language_name)
    : gateway_(gateway), language_name_(std::move(language_name)) {}

PipelineOutcome Pipeline::Generate(const TaskSpec& task, const StudentSnapshot& snapshot,
                                   const std::string& session_id) const {
  PipelineOutcome out;
  Run run(gateway_, out);
  auto no_hint = [&](NoHintReason reason, std::string message) {
    run.Log("Result", std::string(NoHintReasonName(reason)), message);
    out.no_hint = NoHint{reason, std::move(message)};
    return out;
  };

  syntax::SourceModule student;
  try {
    student = ParseOrEmpty(snapshot.code);
  } catch (const syntax::SyntaxError& e) {
    return no_hint(NoHintReason::kSyntaxError, e.what());
  }
  syntax::SourceModule model = syntax::Parse(task.model_solution);
  hints::ScopeSet scope = hints::ComputeScope(student, model);
  if (scope.empty()) {
    return no_hint(NoHintReason::kAlreadyConverged, "student code already matches the model solution");
  }
  run.Log("Input", "scope",
          std::to_string(scope.functions_to_add.size()) + " to add, " +
              std::to_string(scope.functions_to_change.size()) + " to change");

  HintBundle bundle;
  hints::CodeHintResult code;
  try {
    PromptRequest subgoal_request =
        prompts::BuildSubgoalPrompt(task, snapshot.code, language_name_, snapshot.attempt);
    SubgoalPlan plan = run.Ask<SubgoalPlan>(subgoal_request, [&](const std::string& reply) {
      return prompts::ParseSubgoalResponse(reply, task.id);
    });
    SubgoalPlan filtered = prompts::FilterCodeSubgoals(plan);
    run.Log("Subgoals", "plan",
            std::to_string(plan.subgoals.size()) + " subgoals, " +
                std::to_string(filtered.subgoals.size()) + " code");

    PromptRequest code_request = prompts::BuildCodeHintPrompt(
        filtered, task.id, snapshot.code, snapshot.test_errors, language_name_, snapshot.attempt);
    prompts::CodeResponse llm_code =
        run.Ask<prompts::CodeResponse>(code_request, [](const std::string& reply) {
          return prompts::ParseCodeResponse(reply);
        });
    for (const auto& w : llm_code.warnings) run.Log("CodeHint", "warning", w);
    try {
      code = hints::BuildCodeHint(snapshot.code, student, llm_code.module, model);
    } catch (const hints::NoActionableChange& e) {
      return no_hint(NoHintReason::kAlreadyConverged, e.what());
    }
    for (auto h : code.heuristics) run.Log("CodeHint", "heuristic", std::string(hints::HeuristicName(h)));
    for (const auto& i : code.inspections_fired) run.Log("CodeHint", "inspection", i);
    out.heuristic = std::string(hints::HeuristicName(code.heuristics.back()));
    out.inspections_fired = code.inspections_fired;

    PromptRequest text_request = prompts::BuildTextHintPrompt(task.id, snapshot.code, code.hint,
                                                              language_name_, snapshot.attempt);
    bundle.text_hint = run.Ask<TextHint>(text_request, [&](const std::string& reply) {
      return prompts::ParseTextResponse(reply, code.hint);
    });
    bundle.subgoal_plan = std::move(filtered);
  } catch (const FormatFailure& f) {
    return no_hint(NoHintReason::kProviderFormat, f.message);
  }

  bundle.hint_id = RandomId();
  bundle.session_id = session_id;
  bundle.code_hint = code.hint;
  bundle.created_at = UtcNow();

  std::vector<std::string> violations = CheckBundle(bundle, task, snapshot);
  if (!violations.empty()) {
    std::string joined;
    for (const auto& v : violations) joined += (joined.empty() ? "" : "; ") + v;
    run.Log("Gate", "rejected", joined);
    return no_hint(NoHintReason::kInvariantViolation, joined);
  }
  run.Log("Gate", "passed");
  out.bundle = std::move(bundle);
  return out;
}

PipelineOutcome Pipeline::Regenerate(const TaskSpec& task, StudentSnapshot snapshot,
                                     const std::string& session_id) const {
  ++snapshot.attempt;
  return Generate(task, snapshot, session_id);
}

}  // namespace stepwise::pipeline
