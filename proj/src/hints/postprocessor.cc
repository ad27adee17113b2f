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

#include "stepwise/hints/postprocessor.h"

#include <algorithm>

#include "stepwise/hints/inspections.h"
#include "stepwise/syntax/parser.h"
#include "stepwise/syntax/printer.h"
#include "stepwise/syntax/queries.h"

namespace stepwise::hints {

using diff::ChangeKind;
using diff::ChangeUnit;
using diff::Construct;
using diff::EditOp;
using syntax::Block;
using syntax::FunctionDecl;
using syntax::FunctionKey;
using syntax::SourceModule;
using syntax::Stmt;
using syntax::StmtKind;

std::string_view HeuristicName(Heuristic h) {
  switch (h) {
    case Heuristic::kAdditiveStatementIsolation: return "AdditiveStatementIsolation";
    case Heuristic::kIntrinsicStructureModificationFocus:
      return "IntrinsicStructureModificationFocus";
    case Heuristic::kInternalBodyChangeDetection: return "InternalBodyChangeDetection";
    case Heuristic::kShortFunctionSubstitution: return "ShortFunctionSubstitution";
    case Heuristic::kNone: return "None";
  }
  return "?";
}

namespace {

FunctionKey TopLevelKey() { return {std::string(syntax::kTopLevelName), 0}; }

bool IsTopLevel(const FunctionKey& key) { return key == TopLevelKey(); }

Block TodoBlock() {
  Block b;
  b.statements.push_back(TodoStatement());
  return b;
}

void ReplaceBodiesWithTodo(Stmt& s) {
  switch (s.kind) {
    case StmtKind::kIf:
      s.bodies = {TodoBlock()};
      break;
    case StmtKind::kWhen:
      for (auto& b : s.bodies) b = TodoBlock();
      break;
    default:
      s.bodies = {TodoBlock()};
      break;
  }
}

bool IsPrefix(const std::vector<int>& prefix, const std::vector<int>& path) {
  return prefix.size() < path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

std::vector<int> Parent(const std::vector<int>& location) {
  return {location.begin(), location.end() - (location.empty() ? 0 : 1)};
}

// --- path resolution --------------------------------------------------------

struct Slot {
  const std::vector<Stmt>* stmts = nullptr;
  const Block* block = nullptr;  // null for top-level statements
  const Stmt* owner = nullptr;   // null for a function body
  const FunctionDecl* fn = nullptr;
};

const std::vector<Stmt>* RootList(const SourceModule& m, const FunctionKey& key,
                                  const FunctionDecl** fn, const Block** block) {
  if (IsTopLevel(key)) {
    *fn = nullptr;
    *block = nullptr;
    return &m.top_level;
  }
  *fn = syntax::FindFunction(m, key);
  if (!*fn) return nullptr;
  *block = &(*fn)->body;
  return &(*fn)->body.statements;
}

// Resolves the statement list holding the last element of `location`.
std::optional<Slot> ResolveSlot(const SourceModule& m, const FunctionKey& key,
                                const std::vector<int>& location) {
  Slot slot;
  slot.stmts = RootList(m, key, &slot.fn, &slot.block);
  if (!slot.stmts) return std::nullopt;
  for (size_t d = 0; d + 1 < location.size(); d += 2) {
    int i = location[d], b = location[d + 1];
    if (i < 0 || i >= static_cast<int>(slot.stmts->size())) return std::nullopt;
    const Stmt& owner = (*slot.stmts)[i];
    if (b < 0 || b >= static_cast<int>(owner.bodies.size())) return std::nullopt;
    slot.owner = &owner;
    slot.block = &owner.bodies[b];
    slot.stmts = &owner.bodies[b].statements;
  }
  return slot;
}

const Stmt* ResolveStmt(const SourceModule& m, const FunctionKey& key,
                        const std::vector<int>& location) {
  auto slot = ResolveSlot(m, key, location);
  if (!slot || location.empty()) return nullptr;
  int i = location.back();
  if (i < 0 || i >= static_cast<int>(slot->stmts->size())) return nullptr;
  return &(*slot->stmts)[i];
}

bool IsFunctionLevel(const ChangeUnit& u) {
  return u.construct == Construct::kFunctionDecl && u.location.empty();
}

// --- text helpers -----------------------------------------------------------

size_t LineStart(const std::string& text, size_t offset) {
  size_t p = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  if (offset == 0 || p == std::string::npos) return 0;
  return p + 1;
}

size_t LineEnd(const std::string& text, size_t offset) {
  size_t p = text.find('\n', offset);
  return p == std::string::npos ? text.size() : p;
}

bool Blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::string IndentOf(const std::string& text, size_t offset) {
  size_t start = LineStart(text, offset);
  size_t end = text.find_first_not_of(" \t", start);
  if (end == std::string::npos || end > offset) end = offset;
  return text.substr(start, end - start);
}

std::string Indented(const std::string& printed, const std::string& indent) {
  std::string out;
  size_t pos = 0;
  while (pos <= printed.size()) {
    size_t nl = printed.find('\n', pos);
    std::string line = printed.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    if (!line.empty()) out += indent;
    out += line;
    if (nl == std::string::npos) break;
    out += '\n';
    pos = nl + 1;
  }
  return out;
}

std::string Splice(const std::string& text, size_t begin, size_t end, const std::string& with) {
  return text.substr(0, begin) + with + text.substr(end);
}

int LineCount(const std::string& text) {
  if (text.empty()) return 0;
  int n = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? n : n + 1;
}

constexpr syntax::PrintOptions kNoComments{.comments = false};

size_t StatementEnd(const Stmt& s) {
  return s.trailing ? s.trailing->span.end.offset : s.span.end.offset;
}

size_t LeadingStart(const Stmt& s) {
  return s.leading.empty() ? s.span.begin.offset : s.leading.front().span.begin.offset;
}

size_t LeadingStart(const FunctionDecl& fn) {
  return fn.leading.empty() ? fn.span.begin.offset : fn.leading.front().span.begin.offset;
}

std::string WhileHeader(const Stmt& s) { return "while (" + syntax::PrintExpr(s.exprs[0]) + ")"; }

std::string BranchText(const Stmt& s) {
  std::string out;
  for (const auto& b : s.branches) {
    out += "|";
    for (const auto& c : b.conditions) out += syntax::PrintExpr(c) + ",";
  }
  return out;
}

// Statement-level splice into the student's text; nullopt when the layout
// does not allow a local edit.
std::optional<std::string> SpliceUnit(const std::string& text, const SourceModule& before,
                                      const SourceModule& applied, const ChangeUnit& u) {
  if (IsFunctionLevel(u)) {
    if (u.op == EditOp::kInsert) {
      std::string printed = syntax::PrintFunction(*u.function_decl, 0, kNoComments);
      int n = static_cast<int>(before.functions.size());
      if (u.function_index < n) {
        const FunctionDecl& next = before.functions[u.function_index];
        size_t at = LeadingStart(next);
        if (!Blank(std::string_view(text).substr(LineStart(text, at), at - LineStart(text, at)))) {
          return std::nullopt;
        }
        return Splice(text, LineStart(text, at), LineStart(text, at), printed + "\n\n");
      }
      if (Blank(text)) return printed + "\n";
      std::string out = text;
      while (!out.empty() && (out.back() == '\n' || out.back() == ' ' || out.back() == '\t' ||
                              out.back() == '\r')) {
        out.pop_back();
      }
      return out + "\n\n" + printed + "\n";
    }
    if (u.op == EditOp::kHeader) {
      const FunctionDecl* fn = syntax::FindFunction(before, u.function);
      if (!fn) return std::nullopt;
      return Splice(text, fn->header_span.begin.offset, fn->header_span.end.offset,
                    syntax::PrintSignature(*u.function_decl));
    }
    return std::nullopt;
  }

  auto slot = ResolveSlot(before, u.function, u.location);
  if (!slot) return std::nullopt;
  const auto& stmts = *slot->stmts;
  const int n = static_cast<int>(stmts.size());
  const int i = u.location.back();

  if (u.op == EditOp::kHeader) {
    const Stmt& s = stmts[i];
    const Stmt* now = ResolveStmt(applied, u.function, u.location);
    if (!now) return std::nullopt;
    if (s.kind == StmtKind::kWhen && BranchText(s) != BranchText(*now)) {
      std::string printed = syntax::PrintStmt(*now, 0, kNoComments);
      std::string indent = IndentOf(text, s.span.begin.offset);
      std::string body = Indented(printed, indent).substr(indent.size());
      return Splice(text, s.span.begin.offset, StatementEnd(s), body);
    }
    std::string header =
        s.kind == StmtKind::kDoWhile ? WhileHeader(*now) : syntax::PrintHeader(*now);
    return Splice(text, s.header_span.begin.offset, s.header_span.end.offset, header);
  }

  if (u.op == EditOp::kReplace) {
    const Stmt& s = stmts[i];
    std::string indent = IndentOf(text, s.span.begin.offset);
    std::string printed =
        Indented(syntax::PrintStmt(*u.statement, 0, kNoComments), indent).substr(indent.size());
    return Splice(text, s.span.begin.offset, StatementEnd(s), printed);
  }

  if (u.op == EditOp::kDelete) {
    const Stmt& s = stmts[i];
    size_t begin = LineStart(text, s.span.begin.offset);
    size_t end = LineEnd(text, StatementEnd(s));
    if (!Blank(std::string_view(text).substr(begin, s.span.begin.offset - begin)) ||
        !Blank(std::string_view(text).substr(StatementEnd(s), end - StatementEnd(s)))) {
      return std::nullopt;
    }
    return Splice(text, begin, std::min(end + 1, text.size()), "");
  }

  // Insertion.
  if (slot->block && !slot->block->braced) return std::nullopt;
  std::string printed = syntax::PrintStmt(*u.statement, 0, kNoComments);
  const int gap = i;
  if (gap > 0 && gap < n) {
    const Stmt& prev = stmts[gap - 1];
    size_t end = StatementEnd(prev);
    size_t eol = LineEnd(text, end);
    if (eol < text.size() && Blank(std::string_view(text).substr(end, eol - end))) {
      std::string indent = IndentOf(text, prev.span.begin.offset);
      return Splice(text, eol + 1, eol + 1, Indented(printed, indent) + "\n");
    }
  }
  if (gap < n) {
    const Stmt& next = stmts[gap];
    size_t at = LeadingStart(next);
    size_t line = LineStart(text, at);
    if (!Blank(std::string_view(text).substr(line, at - line))) return std::nullopt;
    std::string indent = IndentOf(text, next.span.begin.offset);
    return Splice(text, line, line, Indented(printed, indent) + "\n");
  }
  if (n > 0) {
    const Stmt& last = stmts[n - 1];
    size_t end = StatementEnd(last);
    size_t eol = LineEnd(text, end);
    if (!Blank(std::string_view(text).substr(end, eol - end))) return std::nullopt;
    std::string indent = IndentOf(text, last.span.begin.offset);
    if (!Blank(std::string_view(text).substr(LineStart(text, last.span.begin.offset),
                                             last.span.begin.offset -
                                                 LineStart(text, last.span.begin.offset)))) {
      return std::nullopt;
    }
    return Splice(text, eol, eol, "\n" + Indented(printed, indent));
  }
  if (!slot->block) {
    // Empty top level.
    std::string out = text;
    if (!out.empty() && out.back() != '\n') out += '\n';
    return out + printed + "\n";
  }
  if (!slot->block->dangling.empty()) return std::nullopt;
  size_t open = slot->block->span.begin.offset;
  size_t close = slot->block->span.end.offset - 1;
  size_t owner_at = slot->owner ? slot->owner->span.begin.offset : slot->fn->span.begin.offset;
  std::string outer = IndentOf(text, owner_at);
  return Splice(text, open + 1, close, "\n" + Indented(printed, outer + "    ") + "\n" + outer);
}

std::optional<std::string> ReprintFunction(const std::string& text, const SourceModule& before,
                                           const SourceModule& applied, const FunctionKey& key) {
  if (IsTopLevel(key)) return std::nullopt;
  const FunctionDecl* old_fn = syntax::FindFunction(before, key);
  const FunctionDecl* new_fn = syntax::FindFunction(applied, key);
  if (!old_fn || !new_fn) return std::nullopt;
  FunctionDecl copy = *new_fn;
  copy.leading.clear();
  copy.trailing.reset();
  return Splice(text, old_fn->span.begin.offset, old_fn->span.end.offset,
                syntax::PrintFunction(copy, 0));
}

bool Reparses(const std::string& text, const SourceModule& expected) {
  try {
    return syntax::Equivalent(syntax::Parse(text), expected);
  } catch (const syntax::SyntaxError&) {
    return false;
  }
}

// --- comments ---------------------------------------------------------------

void CollectComments(const std::vector<syntax::Comment>& cs,
                     std::vector<const syntax::Comment*>& out) {
  for (const auto& c : cs) out.push_back(&c);
}

void CollectComments(const Block& b, std::vector<const syntax::Comment*>& out);

void CollectComments(const Stmt& s, std::vector<const syntax::Comment*>& out) {
  CollectComments(s.leading, out);
  if (s.trailing) out.push_back(&*s.trailing);
  for (const auto& b : s.bodies) CollectComments(b, out);
}

void CollectComments(const Block& b, std::vector<const syntax::Comment*>& out) {
  for (const auto& s : b.statements) CollectComments(s, out);
  CollectComments(b.dangling, out);
}

std::vector<const syntax::Comment*> AllComments(const SourceModule& module) {
  std::vector<const syntax::Comment*> out;
  CollectComments(module.dangling, out);
  for (const auto& fn : module.functions) {
    CollectComments(fn.leading, out);
    if (fn.trailing) out.push_back(&*fn.trailing);
    CollectComments(fn.body, out);
  }
  for (const auto& s : module.top_level) CollectComments(s, out);
  return out;
}

// Removes comment tokens starting on lines of `span`; lines left blank go too.
std::string RemoveCommentsInLines(const std::string& text, const LineSpan& span) {
  SourceModule module = syntax::Parse(text);
  std::vector<const syntax::Comment*> hits;
  for (const auto* c : AllComments(module)) {
    int line = c->span.begin.line;
    if (line >= span.start_line && line <= span.end_line) hits.push_back(c);
  }
  std::sort(hits.begin(), hits.end(), [](const auto* a, const auto* b) {
    return a->span.begin.offset > b->span.begin.offset;
  });
  std::string out = text;
  for (const auto* c : hits) {
    size_t begin = c->span.begin.offset;
    size_t end = c->span.end.offset;
    while (begin > 0 && (out[begin - 1] == ' ' || out[begin - 1] == '\t')) --begin;
    size_t line = LineStart(out, begin);
    size_t eol = LineEnd(out, end);
    if (Blank(std::string_view(out).substr(line, begin - line)) &&
        Blank(std::string_view(out).substr(end, eol - end))) {
      out.erase(line, std::min(eol + 1, out.size()) - line);
    } else {
      out.erase(begin, end - begin);
    }
  }
  return out;
}

}  // namespace

syntax::Stmt TodoStatement() {
  return syntax::MakeExprStmt(
      syntax::MakeCall("TODO", {syntax::MakeString(std::string(kTodoMessage))}));
}

ScopeSet ComputeScope(const SourceModule& student, const SourceModule& model) {
  ScopeSet scope;
  for (const auto& fn : model.functions) {
    const FunctionDecl* mine = syntax::FindFunction(student, syntax::KeyOf(fn));
    if (!mine) {
      scope.functions_to_add.insert(syntax::KeyOf(fn));
    } else if (!syntax::Equivalent(*mine, fn)) {
      scope.functions_to_change.insert(syntax::KeyOf(fn));
    }
  }
  if (!model.top_level.empty()) {
    FunctionDecl a = diff::TopLevelFunction(student), b = diff::TopLevelFunction(model);
    if (!syntax::Equivalent(a.body, b.body)) scope.functions_to_change.insert(TopLevelKey());
  }
  return scope;
}

diff::ChangeSet FilterToScope(const diff::ChangeSet& changes, const ScopeSet& scope) {
  diff::ChangeSet out;
  for (const auto& f : changes.functions) {
    if (!scope.contains(f.function)) continue;
    diff::FunctionChanges kept{f.function, {}};
    for (const auto& u : f.units) {
      // A function missing from the model's output is an omission, not a
      // proposal to delete it.
      if (IsFunctionLevel(u) && u.op == EditOp::kDelete) continue;
      kept.units.push_back(u);
    }
    if (kept.units.empty()) continue;
    out.functions.push_back(std::move(kept));
    break;
  }
  return out;
}

std::optional<FunctionDecl> ShortFunctionSubstitute(const FunctionKey& target,
                                                    const SourceModule& model) {
  FunctionDecl fn;
  if (IsTopLevel(target)) {
    if (model.top_level.empty()) throw std::invalid_argument("model has no top-level statements");
    fn = diff::TopLevelFunction(model);
  } else {
    const FunctionDecl* found = syntax::FindFunction(model, target);
    if (!found) throw std::invalid_argument(target.ToString() + " is not in the model solution");
    fn = *found;
  }
  if (syntax::BodyLineCount(fn) > 3) return std::nullopt;
  syntax::StripComments(fn);
  return fn;
}

ReducedUnit ReduceToSingleStep(const std::vector<ChangeUnit>& units) {
  if (units.empty()) throw std::invalid_argument("no units to reduce");
  const ChangeUnit& first = units.front();

  if (first.kind == ChangeKind::kAddConstruct && first.construct != Construct::kStatement) {
    ChangeUnit u = first;
    if (u.function_decl) {
      u.function_decl->body = TodoBlock();
      u.function_decl->expression_body = false;
      u.after_text = syntax::PrintFunction(*u.function_decl, 0, kNoComments);
    } else {
      ReplaceBodiesWithTodo(*u.statement);
      u.after_text = syntax::PrintStmt(*u.statement, 0, kNoComments);
    }
    return {std::move(u), Heuristic::kAdditiveStatementIsolation};
  }

  auto nested_under = [&](const ChangeUnit& header) {
    bool function_header = IsFunctionLevel(header);
    for (const auto& other : units) {
      if (&other == &header || other.kind == ChangeKind::kHeaderModification) continue;
      if (function_header ? !IsFunctionLevel(other) : IsPrefix(header.location, other.location)) {
        return true;
      }
    }
    return false;
  };
  // The header unit of the construct enclosing `first`, or `first` itself.
  for (const auto& u : units) {
    if (u.kind != ChangeKind::kHeaderModification) continue;
    bool encloses = &u == &first || (IsFunctionLevel(u) && !IsFunctionLevel(first)) ||
                    IsPrefix(u.location, first.location);
    if (encloses && nested_under(u)) return {u, Heuristic::kIntrinsicStructureModificationFocus};
  }

  if (first.kind == ChangeKind::kBodyStatementModification) {
    for (size_t k = 1; k < units.size(); ++k) {
      if (units[k].kind == ChangeKind::kBodyStatementModification &&
          Parent(units[k].location) == Parent(first.location)) {
        return {first, Heuristic::kInternalBodyChangeDetection};
      }
    }
  }
  return {first, Heuristic::kNone};
}

CodeHintResult BuildCodeHint(const std::string& student_text, const SourceModule& student,
                             const SourceModule& llm_output, const SourceModule& model) {
  ScopeSet scope = ComputeScope(student, model);
  if (scope.empty()) throw NoActionableChange("student code already matches the model solution");
  diff::ChangeSet filtered = FilterToScope(diff::DiffModules(student, llm_output), scope);
  if (filtered.empty()) throw NoActionableChange("no in-scope change proposed");

  CodeHintResult result;
  const FunctionKey target = filtered.functions[0].function;
  std::vector<ChangeUnit> units = filtered.functions[0].units;
  Provenance provenance = Provenance::kLlmGenerated;

  if (auto short_fn = ShortFunctionSubstitute(target, model)) {
    provenance = Provenance::kModelSolutionSubstituted;
    result.heuristics.push_back(Heuristic::kShortFunctionSubstitution);
    SourceModule substituted = student;
    if (IsTopLevel(target)) {
      substituted.top_level = short_fn->body.statements;
    } else if (FunctionDecl* mine = syntax::FindFunction(substituted, target)) {
      mine->params = short_fn->params;
      mine->return_type = short_fn->return_type;
      mine->body = short_fn->body;
      mine->expression_body = short_fn->expression_body;
    } else {
      int gap = static_cast<int>(substituted.functions.size());
      if (IsFunctionLevel(units.front()) && units.front().op == EditOp::kInsert) {
        gap = units.front().function_index;
      }
      substituted.functions.insert(substituted.functions.begin() + gap, *short_fn);
    }
    diff::ChangeSet substituted_changes = diff::DiffModules(student, substituted);
    const diff::FunctionChanges* fc = substituted_changes.Find(target);
    if (!fc) throw NoActionableChange("function already matches the model solution");
    units = fc->units;
  }

  ChangeUnit unit;
  if (provenance == Provenance::kModelSolutionSubstituted && units.size() == 1) {
    unit = units.front();
  } else {
    ReducedUnit reduced = ReduceToSingleStep(units);
    result.heuristics.push_back(reduced.heuristic);
    unit = std::move(reduced.unit);
  }
  if (result.heuristics.empty()) result.heuristics.push_back(Heuristic::kNone);

  if (unit.op == EditOp::kHeader && unit.statement) {
    for (auto& e : unit.statement->exprs) {
      auto fired = ApplyInspections(e);
      result.inspections_fired.insert(result.inspections_fired.end(), fired.begin(), fired.end());
    }
    for (auto& br : unit.statement->branches) {
      for (auto& c : br.conditions) {
        auto fired = ApplyInspections(c);
        result.inspections_fired.insert(result.inspections_fired.end(), fired.begin(),
                                        fired.end());
      }
    }
  } else if (unit.statement) {
    syntax::StripComments(*unit.statement);
    auto fired = ApplyInspections(*unit.statement);
    result.inspections_fired.insert(result.inspections_fired.end(), fired.begin(), fired.end());
  }
  if (unit.statement) syntax::StripComments(*unit.statement);
  if (unit.function_decl) {
    syntax::StripComments(*unit.function_decl);
    if (unit.op == EditOp::kInsert) {
      auto fired = ApplyInspections(*unit.function_decl);
      result.inspections_fired.insert(result.inspections_fired.end(), fired.begin(), fired.end());
    }
  }

  SourceModule applied = diff::ApplyUnits(student, std::span(&unit, 1));

  std::string after;
  if (auto spliced = SpliceUnit(student_text, student, applied, unit);
      spliced && Reparses(*spliced, applied)) {
    after = *spliced;
  } else if (auto reprinted = ReprintFunction(student_text, student, applied, target);
             reprinted && Reparses(*reprinted, applied)) {
    after = *reprinted;
  } else {
    after = syntax::Print(applied);
  }

  SourceModule after_module = syntax::Parse(after);
  diff::ChangeSet final_diff = diff::DiffModules(student, after_module);
  if (final_diff.empty()) throw NoActionableChange("the proposed change has no effect");
  if (auto span = UnitLinesInAfter(student, after_module, final_diff.AllUnits().front());
      span && CommentsInLines(after_module, *span) > 0) {
    std::string cleaned = RemoveCommentsInLines(after, *span);
    if (Reparses(cleaned, after_module)) {
      after = std::move(cleaned);
      after_module = syntax::Parse(after);
      final_diff = diff::DiffModules(student, after_module);
    }
  }
  std::vector<ChangeUnit> all = final_diff.AllUnits();
  result.unit = all.front();
  result.hint.target_function = target;
  result.hint.before = student_text;
  result.hint.after = std::move(after);
  result.hint.retained_unit = diff::ToJson(result.unit);
  result.hint.diff = diff::ToJson(final_diff);
  result.hint.provenance = provenance;
  return result;
}

LineSpan UnitLinesInBefore(const SourceModule& before, const std::string& before_text,
                           const ChangeUnit& u) {
  const int past_end = LineCount(before_text) + 1;
  auto clamp = [&](LineSpan s) {
    s.start_line = std::clamp(s.start_line, 1, past_end);
    s.end_line = std::clamp(s.end_line, s.start_line, past_end);
    return s;
  };
  if (IsFunctionLevel(u)) {
    if (u.op == EditOp::kInsert) {
      if (u.function_index < static_cast<int>(before.functions.size())) {
        int line = before.functions[u.function_index].span.begin.line;
        return clamp({line, line});
      }
      return clamp({past_end, past_end});
    }
    const FunctionDecl* fn = syntax::FindFunction(before, u.function);
    if (!fn) return {1, 1};
    const syntax::Span& s = u.op == EditOp::kHeader ? fn->header_span : fn->span;
    return clamp({s.begin.line, s.end.line});
  }
  auto slot = ResolveSlot(before, u.function, u.location);
  if (!slot) return {1, 1};
  const auto& stmts = *slot->stmts;
  const int n = static_cast<int>(stmts.size());
  const int i = u.location.back();
  if (u.op == EditOp::kInsert) {
    if (i < n) return clamp({stmts[i].span.begin.line, stmts[i].span.begin.line});
    if (n > 0) {
      int line = stmts[n - 1].span.end.line + 1;
      return clamp({line, line});
    }
    if (slot->block) {
      const syntax::Span& b = slot->block->span;
      int line = b.end.line > b.begin.line ? b.begin.line + 1 : b.begin.line;
      return clamp({line, line});
    }
    return clamp({past_end, past_end});
  }
  if (i < 0 || i >= n) return {1, 1};
  const Stmt& s = stmts[i];
  if (u.op == EditOp::kHeader && s.header_span.valid() &&
      !(u.statement && s.kind == StmtKind::kWhen && BranchText(s) != BranchText(*u.statement))) {
    return clamp({s.header_span.begin.line, s.header_span.end.line});
  }
  return clamp({s.span.begin.line, s.span.end.line});
}

std::optional<LineSpan> UnitLinesInAfter(const SourceModule& before, const SourceModule& after,
                                         const ChangeUnit& u) {
  if (u.op == EditOp::kDelete) return std::nullopt;
  if (IsFunctionLevel(u)) {
    const FunctionDecl* fn = nullptr;
    if (u.op == EditOp::kInsert) {
      if (u.function_index < 0 || u.function_index >= static_cast<int>(after.functions.size())) {
        return std::nullopt;
      }
      fn = &after.functions[u.function_index];
    } else {
      fn = syntax::FindFunction(after, u.function);
    }
    if (!fn) return std::nullopt;
    const syntax::Span& s = u.op == EditOp::kHeader ? fn->header_span : fn->span;
    return LineSpan{s.begin.line, s.end.line};
  }
  const Stmt* s = ResolveStmt(after, u.function, u.location);
  if (!s) return std::nullopt;
  if (u.op == EditOp::kHeader) {
    const Stmt* old = ResolveStmt(before, u.function, u.location);
    bool whole = old && old->kind == StmtKind::kWhen && BranchText(*old) != BranchText(*s);
    if (!whole) return LineSpan{s->header_span.begin.line, s->header_span.end.line};
  }
  return LineSpan{s->span.begin.line, s->span.end.line};
}

int CommentsInLines(const SourceModule& module, const LineSpan& span) {
  auto comments = AllComments(module);
  return static_cast<int>(std::count_if(comments.begin(), comments.end(), [&](const auto* c) {
    return c->span.begin.line >= span.start_line && c->span.begin.line <= span.end_line;
  }));
}

}  // namespace stepwise::hints
