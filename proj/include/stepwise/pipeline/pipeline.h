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

#ifndef STEPWISE_PIPELINE_PIPELINE_H_
#define STEPWISE_PIPELINE_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepwise/core/model.h"
#include "stepwise/llm/gateway.h"

namespace stepwise::pipeline {

enum class NoHintReason { kSyntaxError, kProviderFormat, kAlreadyConverged, kInvariantViolation };

std::string_view NoHintReasonName(NoHintReason reason);

struct NoHint {
  NoHintReason reason = NoHintReason::kAlreadyConverged;
  std::string message;
};

struct StageEvent {
  std::string stage;  // "Input", "Subgoals", "CodeHint", "TextHint", "Gate"
  std::string event;
  std::string detail;
};

struct PipelineOutcome {
  std::optional<HintBundle> bundle;
  std::optional<NoHint> no_hint;
  std::vector<StageEvent> diagnostics;
  // Heuristic that decided the retained change, by name.
  std::string heuristic;
  std::vector<std::string> inspections_fired;
  std::vector<std::string> fingerprints;  // prompts sent, in order

  bool ok() const { return bundle.has_value(); }
};

nlohmann::json ToJson(const StageEvent& event);
nlohmann::json DiagnosticsJson(const std::vector<StageEvent>& events);

// Everything the final gate checks, as human-readable violations; empty when
// the bundle may be emitted.
std::vector<std::string> CheckBundle(const HintBundle& bundle, const TaskSpec& task,
                                     const StudentSnapshot& snapshot);

class Pipeline {
 public:
  explicit Pipeline(llm::Gateway& gateway, std::string language_name = "Kotlin");

  // Provider failures (FixtureMiss, ProviderError, ProviderTimeout) propagate.
  PipelineOutcome Generate(const TaskSpec& task, const StudentSnapshot& snapshot,
                           const std::string& session_id = "") const;

  // Generate with snapshot.attempt + 1.
  PipelineOutcome Regenerate(const TaskSpec& task, StudentSnapshot snapshot,
                             const std::string& session_id = "") const;

 private:
  llm::Gateway& gateway_;
  std::string language_name_;
};

}  // namespace stepwise::pipeline

#endif  // STEPWISE_PIPELINE_PIPELINE_H_
