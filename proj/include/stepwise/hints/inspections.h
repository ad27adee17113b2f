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

#ifndef STEPWISE_HINTS_INSPECTIONS_H_
#define STEPWISE_HINTS_INSPECTIONS_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stepwise/syntax/ast.h"

namespace stepwise::hints {

// A rewrite is either expression-level or statement-level. Each returns
// true if it changed the node in place.
struct InspectionRule {
  std::string id;
  std::string description;
  std::function<bool(syntax::Expr&)> rewrite_expr;
  std::function<bool(syntax::Stmt&)> rewrite_stmt;
};

std::span<const InspectionRule> ShippedRules();
const InspectionRule& RuleById(std::string_view id);

// Rewrites to a fixed point. Returns the ids of the rules that fired, in
// firing order (a rule appears once per firing).
std::vector<std::string> ApplyInspections(syntax::Expr& expr);
std::vector<std::string> ApplyInspections(syntax::Stmt& stmt);
std::vector<std::string> ApplyInspections(syntax::FunctionDecl& fn);
syntax::SourceModule ApplyInspections(syntax::SourceModule module,
                                      std::vector<std::string>* fired = nullptr);

// Ids of rules that would fire on the node; empty means clean.
std::vector<std::string> FindInspectionHits(const syntax::Stmt& stmt);
std::vector<std::string> FindInspectionHits(const syntax::FunctionDecl& fn);

}  // namespace stepwise::hints

#endif  // STEPWISE_HINTS_INSPECTIONS_H_
