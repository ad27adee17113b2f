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

#ifndef STEPWISE_HINTS_POSTPROCESSOR_H_
#define STEPWISE_HINTS_POSTPROCESSOR_H_

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stepwise/core/model.h"
#include "stepwise/diff/ast_diff.h"
#include "stepwise/syntax/ast.h"

namespace stepwise::hints {

inline constexpr std::string_view kTodoMessage = "Implement this function";

struct ScopeSet {
  std::set<syntax::FunctionKey> functions_to_add;
  std::set<syntax::FunctionKey> functions_to_change;

  bool empty() const { return functions_to_add.empty() && functions_to_change.empty(); }
  bool contains(const syntax::FunctionKey& key) const {
    return functions_to_add.count(key) || functions_to_change.count(key);
  }
};

// Top-level statements take part as the function "<top-level>/0".
ScopeSet ComputeScope(const syntax::SourceModule& student, const syntax::SourceModule& model);

diff::ChangeSet FilterToScope(const diff::ChangeSet& changes, const ScopeSet& scope);

// The model's version of `target` if its body has at most three code lines.
// Throws std::invalid_argument if `target` is not in `model`.
std::optional<syntax::FunctionDecl> ShortFunctionSubstitute(const syntax::FunctionKey& target,
                                                            const syntax::SourceModule& model);

enum class Heuristic {
  kAdditiveStatementIsolation,
  kIntrinsicStructureModificationFocus,
  kInternalBodyChangeDetection,
  kShortFunctionSubstitution,
  kNone,
};

std::string_view HeuristicName(Heuristic h);

struct ReducedUnit {
  diff::ChangeUnit unit;
  Heuristic heuristic = Heuristic::kNone;
};

// `units` are the units of one function, in diff order. Throws
// std::invalid_argument when empty.
ReducedUnit ReduceToSingleStep(const std::vector<diff::ChangeUnit>& units);

// `TODO("Implement this function")`.
syntax::Stmt TodoStatement();

class NoActionableChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CodeHintResult {
  CodeHint hint;
  // Heuristics in the order they were applied; the last one decided the
  // retained unit.
  std::vector<Heuristic> heuristics;
  std::vector<std::string> inspections_fired;
  diff::ChangeUnit unit;  // against parse(hint.before)
};

// `student_text` is the text `student` was parsed from; unchanged regions of
// it are kept verbatim in the hint. Throws NoActionableChange.
CodeHintResult BuildCodeHint(const std::string& student_text, const syntax::SourceModule& student,
                             const syntax::SourceModule& llm_output,
                             const syntax::SourceModule& model);

// 1-based inclusive lines in `before` that a unit (computed against
// `before`) touches; an insertion maps to the line it is inserted at.
LineSpan UnitLinesInBefore(const syntax::SourceModule& before, const std::string& before_text,
                           const diff::ChangeUnit& unit);

// Lines of `after` occupied by the unit's new content; empty for deletions.
std::optional<LineSpan> UnitLinesInAfter(const syntax::SourceModule& before,
                                         const syntax::SourceModule& after,
                                         const diff::ChangeUnit& unit);

// Comment tokens of `module` starting on lines [span.start_line, span.end_line].
int CommentsInLines(const syntax::SourceModule& module, const LineSpan& span);

}  // namespace stepwise::hints

#endif  // STEPWISE_HINTS_POSTPROCESSOR_H_
