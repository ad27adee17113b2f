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

#ifndef STEPWISE_DIFF_AST_DIFF_H_
#define STEPWISE_DIFF_AST_DIFF_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepwise/syntax/ast.h"

namespace stepwise::diff {

enum class ChangeKind {
  kAddConstruct,
  kDeleteConstruct,
  kHeaderModification,
  kBodyStatementModification,
};

// The six compound constructs, or a plain statement.
enum class Construct { kFunctionDecl, kIf, kWhen, kFor, kWhile, kDoWhile, kStatement };

// How a unit edits `before`.
enum class EditOp { kInsert, kReplace, kDelete, kHeader };

std::string_view ChangeKindName(ChangeKind kind);
std::string_view ConstructName(Construct construct);
Construct ConstructOf(syntax::StmtKind kind);

// One classified structural difference. Statement locations are paths of
// alternating statement indices and body slots, starting at the function
// body: [i0, slot0, i1, slot1, ..., last]. `last` is a statement index for
// replace/delete/header edits and a gap index (insert before that
// statement) for inserts. Body slots are 0 = then/loop body, 1 = else, or
// the branch index of a `when`. An empty location addresses the function.
struct ChangeUnit {
  ChangeKind kind = ChangeKind::kBodyStatementModification;
  syntax::FunctionKey function;
  Construct construct = Construct::kStatement;
  // Resolves in `before`, except for AddConstruct where it resolves in `after`.
  std::vector<int> anchor;
  std::optional<std::string> before_text;
  std::optional<std::string> after_text;

  EditOp op = EditOp::kReplace;
  std::vector<int> location;  // in `before`
  // For function-level inserts/deletes: gap or index in the module's
  // function list.
  int function_index = -1;
  int ordinal = 0;  // order among inserts sharing a gap

  // New statement for inserts/replacements, or the statement carrying the new
  // header for statement header edits.
  std::optional<syntax::Stmt> statement;
  // New function for function inserts, or the new signature for function
  // header edits.
  std::optional<syntax::FunctionDecl> function_decl;
  // When-header edits: for each branch of the new header, the index of the
  // `before` branch whose body it keeps, or -1 if the body comes from
  // `statement`.
  std::vector<int> branch_sources;
  // Fingerprint of the node being replaced, deleted or re-headed.
  std::string expected;
};

struct FunctionChanges {
  syntax::FunctionKey function;
  std::vector<ChangeUnit> units;
};

struct ChangeSet {
  // Functions in `after` source order, then deleted functions in `before`
  // order. Only functions with at least one unit are listed.
  std::vector<FunctionChanges> functions;

  bool empty() const { return functions.empty(); }
  size_t UnitCount() const;
  std::vector<ChangeUnit> AllUnits() const;
  const FunctionChanges* Find(const syntax::FunctionKey& key) const;
};

struct FunctionPair {
  const syntax::FunctionDecl* before = nullptr;
  const syntax::FunctionDecl* after = nullptr;
};

// Matches functions by (name, arity). Order: `after` functions in source
// order, then unmatched `before` functions in source order. Top-level script
// statements are not functions and are handled by DiffModules.
std::vector<FunctionPair> AlignFunctions(const syntax::SourceModule& before,
                                         const syntax::SourceModule& after);

// `before_index` is the function's index in `before` for deletions and the
// insertion gap for additions.
std::vector<ChangeUnit> DiffFunction(const syntax::FunctionDecl* before,
                                     const syntax::FunctionDecl* after,
                                     int before_index = -1);

ChangeSet DiffModules(const syntax::SourceModule& before,
                      const syntax::SourceModule& after);

class StaleUnitError : public std::runtime_error {
 public:
  StaleUnitError(const ChangeUnit& unit, const std::string& why);
  const std::vector<int>& anchor() const { return anchor_; }

 private:
  std::vector<int> anchor_;
};

// Applies a subset of units computed against `before`. Applying every unit
// of DiffModules(before, after) yields a module equivalent to `after`.
// Throws StaleUnitError when a unit does not resolve.
syntax::SourceModule ApplyUnits(const syntax::SourceModule& before,
                                std::span<const ChangeUnit> units);

// Stable structural fingerprints (kind + comment-free printed form).
std::string Fingerprint(const syntax::Stmt& stmt);
std::string Fingerprint(const syntax::FunctionDecl& fn);
std::string HeaderFingerprint(const syntax::Stmt& stmt);

// The function holding a module's top-level statements.
syntax::FunctionDecl TopLevelFunction(const syntax::SourceModule& module);

// Wire format: [{"function": "f/1", "units": [{"kind", "anchor",
// "construct", "before", "after"}]}].
nlohmann::json ToJson(const ChangeSet& changes);
nlohmann::json ToJson(const ChangeUnit& unit);

}  // namespace stepwise::diff

#endif  // STEPWISE_DIFF_AST_DIFF_H_
