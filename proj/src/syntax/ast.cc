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

#include "stepwise/syntax/ast.h"

#include "stepwise/syntax/printer.h"

namespace stepwise::syntax {

std::string FunctionKey::ToString() const {
  return name + "/" + std::to_string(arity);
}

FunctionKey KeyOf(const FunctionDecl& fn) {
  return {fn.name, static_cast<int>(fn.params.size())};
}

bool IsCompound(StmtKind kind) {
  switch (kind) {
    case StmtKind::kIf:
    case StmtKind::kWhen:
    case StmtKind::kFor:
    case StmtKind::kWhile:
    case StmtKind::kDoWhile:
      return true;
    default:
      return false;
  }
}

std::string_view StmtKindName(StmtKind kind) {
  switch (kind) {
    case StmtKind::kVarDecl: return "VarDecl";
    case StmtKind::kAssign: return "Assign";
    case StmtKind::kExprStmt: return "ExprStmt";
    case StmtKind::kReturn: return "Return";
    case StmtKind::kBreak: return "Break";
    case StmtKind::kContinue: return "Continue";
    case StmtKind::kIf: return "If";
    case StmtKind::kWhen: return "When";
    case StmtKind::kFor: return "For";
    case StmtKind::kWhile: return "While";
    case StmtKind::kDoWhile: return "DoWhile";
  }
  return "?";
}

int BodyLineCount(const FunctionDecl& fn) {
  FunctionDecl braced = fn;
  braced.expression_body = false;
  std::string text = PrintFunction(braced, 0, {.comments = false});
  int lines = 0;
  for (char c : text) lines += c == '\n';
  // `fun f() {}` prints on one line; otherwise drop the header and `}` lines.
  return lines == 0 ? 0 : lines - 1;
}

namespace {

bool SameComments(const std::vector<Comment>& a, const std::vector<Comment>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].text != b[i].text) return false;
  }
  return true;
}

bool SameComment(const std::optional<Comment>& a, const std::optional<Comment>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || a->text == b->text;
}

bool SameExprs(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!Equivalent(a[i], b[i])) return false;
  }
  return true;
}

const Block& EmptyBlock() {
  static const Block kEmpty;
  return kEmpty;
}

}  // namespace

bool Equivalent(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.text == b.text && SameExprs(a.operands, b.operands);
}

bool Equivalent(const Block& a, const Block& b, bool compare_comments) {
  if (a.statements.size() != b.statements.size()) return false;
  if (compare_comments && !SameComments(a.dangling, b.dangling)) return false;
  for (size_t i = 0; i < a.statements.size(); ++i) {
    if (!Equivalent(a.statements[i], b.statements[i], compare_comments)) {
      return false;
    }
  }
  return true;
}

bool Equivalent(const Stmt& a, const Stmt& b, bool compare_comments) {
  if (a.kind != b.kind || a.name != b.name || a.type_name != b.type_name ||
      a.op != b.op || a.is_var != b.is_var || !SameExprs(a.exprs, b.exprs)) {
    return false;
  }
  if (compare_comments &&
      (!SameComments(a.leading, b.leading) || !SameComment(a.trailing, b.trailing))) {
    return false;
  }
  if (a.branches.size() != b.branches.size()) return false;
  for (size_t i = 0; i < a.branches.size(); ++i) {
    if (!SameExprs(a.branches[i].conditions, b.branches[i].conditions)) return false;
  }
  size_t slots = std::max(a.bodies.size(), b.bodies.size());
  for (size_t i = 0; i < slots; ++i) {
    const Block& x = i < a.bodies.size() ? a.bodies[i] : EmptyBlock();
    const Block& y = i < b.bodies.size() ? b.bodies[i] : EmptyBlock();
    if (!Equivalent(x, y, compare_comments)) return false;
  }
  return true;
}

bool Equivalent(const FunctionDecl& a, const FunctionDecl& b, bool compare_comments) {
  if (a.name != b.name || a.return_type != b.return_type ||
      a.params.size() != b.params.size()) {
    return false;
  }
  for (size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name ||
        a.params[i].type_name != b.params[i].type_name) {
      return false;
    }
  }
  if (compare_comments &&
      (!SameComments(a.leading, b.leading) || !SameComment(a.trailing, b.trailing))) {
    return false;
  }
  return Equivalent(a.body, b.body, compare_comments);
}

bool Equivalent(const SourceModule& a, const SourceModule& b, bool compare_comments) {
  if (a.functions.size() != b.functions.size() ||
      a.top_level.size() != b.top_level.size()) {
    return false;
  }
  if (compare_comments && !SameComments(a.dangling, b.dangling)) return false;
  for (size_t i = 0; i < a.functions.size(); ++i) {
    if (!Equivalent(a.functions[i], b.functions[i], compare_comments)) return false;
  }
  for (size_t i = 0; i < a.top_level.size(); ++i) {
    if (!Equivalent(a.top_level[i], b.top_level[i], compare_comments)) return false;
  }
  return true;
}

Expr MakeName(std::string name) {
  Expr e;
  e.kind = ExprKind::kName;
  e.text = std::move(name);
  return e;
}

Expr MakeString(std::string value) {
  Expr e;
  e.kind = ExprKind::kStringLiteral;
  e.text = std::move(value);
  return e;
}

Expr MakeBool(bool value) {
  Expr e;
  e.kind = ExprKind::kBoolLiteral;
  e.text = value ? "true" : "false";
  return e;
}

Expr MakeCall(std::string callee, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.operands.push_back(MakeName(std::move(callee)));
  for (auto& a : args) e.operands.push_back(std::move(a));
  return e;
}

Expr MakeBinary(std::string op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::kBinary;
  e.text = std::move(op);
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Expr MakeUnary(std::string op, Expr operand) {
  Expr e;
  e.kind = ExprKind::kUnary;
  e.text = std::move(op);
  e.operands.push_back(std::move(operand));
  return e;
}

Stmt MakeExprStmt(Expr expr) {
  Stmt s;
  s.kind = StmtKind::kExprStmt;
  s.exprs.push_back(std::move(expr));
  return s;
}

Stmt MakeReturn(std::optional<Expr> value) {
  Stmt s;
  s.kind = StmtKind::kReturn;
  if (value) s.exprs.push_back(std::move(*value));
  return s;
}

}  // namespace stepwise::syntax
