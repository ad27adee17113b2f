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

#include "stepwise/hints/inspections.h"

#include <optional>
#include <stdexcept>

namespace stepwise::hints {

using syntax::Expr;
using syntax::ExprKind;
using syntax::Stmt;
using syntax::StmtKind;

namespace {

constexpr int kMaxRounds = 64;

bool IsBinary(const Expr& e, std::string_view op) {
  return e.kind == ExprKind::kBinary && e.text == op;
}

bool IsBool(const Expr& e, bool value) {
  return e.kind == ExprKind::kBoolLiteral && e.text == (value ? "true" : "false");
}

// Operands that may be evaluated once instead of twice.
bool IsPure(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kName:
    case ExprKind::kIntLiteral:
      return true;
    case ExprKind::kUnary:
      return e.text == "-" && e.operands[0].kind == ExprKind::kIntLiteral;
    default:
      return false;
  }
}

struct Bound {
  const Expr* subject;
  const Expr* limit;
  bool lower;
};

// Every reading of `cmp` as `subject >= limit` or `subject <= limit`.
std::vector<Bound> Bounds(const Expr& cmp) {
  std::vector<Bound> out;
  if (cmp.kind != ExprKind::kBinary || (cmp.text != ">=" && cmp.text != "<=")) return out;
  const Expr& l = cmp.operands[0];
  const Expr& r = cmp.operands[1];
  if (!IsPure(l) || !IsPure(r)) return out;
  bool ge = cmp.text == ">=";
  out.push_back({&l, &r, ge});
  out.push_back({&r, &l, !ge});
  return out;
}

bool ComparisonChainToRange(Expr& e) {
  if (!IsBinary(e, "&&")) return false;
  for (const Bound& a : Bounds(e.operands[0])) {
    for (const Bound& b : Bounds(e.operands[1])) {
      if (a.lower == b.lower || !syntax::Equivalent(*a.subject, *b.subject)) continue;
      if (a.subject->kind != ExprKind::kName) continue;
      const Bound& lo = a.lower ? a : b;
      const Bound& hi = a.lower ? b : a;
      Expr range;
      range.kind = ExprKind::kRange;
      range.operands = {*lo.limit, *hi.limit};
      Expr subject = *lo.subject;
      e = syntax::MakeBinary("in", std::move(subject), std::move(range));
      return true;
    }
  }
  return false;
}

std::optional<Expr> OtherThanBool(const Expr& e, bool value) {
  if (IsBool(e.operands[1], value)) return e.operands[0];
  if (IsBool(e.operands[0], value)) return e.operands[1];
  return std::nullopt;
}

bool EqualsTrue(Expr& e) {
  if (!IsBinary(e, "==")) return false;
  auto other = OtherThanBool(e, true);
  if (!other) return false;
  e = std::move(*other);
  return true;
}

bool EqualsFalse(Expr& e) {
  if (!IsBinary(e, "==")) return false;
  auto other = OtherThanBool(e, false);
  if (!other) return false;
  e = syntax::MakeUnary("!", std::move(*other));
  return true;
}

bool NegatedEquality(Expr& e) {
  if (e.kind != ExprKind::kUnary || e.text != "!" || !IsBinary(e.operands[0], "==")) return false;
  Expr inner = std::move(e.operands[0]);
  e = syntax::MakeBinary("!=", std::move(inner.operands[0]), std::move(inner.operands[1]));
  return true;
}

bool ReturnsBool(const syntax::Block& b, bool value) {
  return b.statements.size() == 1 && b.statements[0].kind == StmtKind::kReturn &&
         b.statements[0].exprs.size() == 1 && IsBool(b.statements[0].exprs[0], value);
}

bool IfReturnBool(Stmt& s) {
  if (s.kind != StmtKind::kIf || s.bodies.size() != 2) return false;
  if (!ReturnsBool(s.bodies[0], true) || !ReturnsBool(s.bodies[1], false)) return false;
  Stmt ret = syntax::MakeReturn(std::move(s.exprs[0]));
  ret.leading = std::move(s.leading);
  ret.trailing = std::move(s.trailing);
  s = std::move(ret);
  return true;
}

bool EmptyElse(Stmt& s) {
  if (s.kind != StmtKind::kIf || s.bodies.size() != 2) return false;
  const syntax::Block& e = s.bodies[1];
  if (!e.statements.empty() || !e.dangling.empty()) return false;
  s.bodies.pop_back();
  return true;
}

std::vector<InspectionRule> MakeRules() {
  return {
      {"ComparisonChainToRange", "`x >= a && x <= b` becomes `x in a..b`",
       ComparisonChainToRange, nullptr},
      {"EqualsTrue", "`x == true` becomes `x`", EqualsTrue, nullptr},
      {"EqualsFalse", "`x == false` becomes `!x`", EqualsFalse, nullptr},
      {"NegatedEquality", "`!(a == b)` becomes `a != b`", NegatedEquality, nullptr},
      {"IfReturnBoolean", "`if (c) return true else return false` becomes `return c`", nullptr,
       IfReturnBool},
      {"EmptyElse", "an empty `else` branch is dropped", nullptr, EmptyElse},
  };
}

class Rewriter {
 public:
  void Visit(Expr& e) {
    for (auto& o : e.operands) Visit(o);
    for (int round = 0; round < kMaxRounds; ++round) {
      bool changed = false;
      for (const auto& rule : ShippedRules()) {
        if (rule.rewrite_expr && rule.rewrite_expr(e)) {
          fired.push_back(rule.id);
          changed = true;
          for (auto& o : e.operands) Visit(o);
        }
      }
      if (!changed) return;
    }
  }

  void Visit(syntax::Block& b) {
    for (auto& s : b.statements) Visit(s);
  }

  void Visit(Stmt& s) {
    for (int round = 0; round < kMaxRounds; ++round) {
      for (auto& e : s.exprs) Visit(e);
      for (auto& br : s.branches) {
        for (auto& c : br.conditions) Visit(c);
      }
      for (auto& b : s.bodies) Visit(b);
      bool changed = false;
      for (const auto& rule : ShippedRules()) {
        if (rule.rewrite_stmt && rule.rewrite_stmt(s)) {
          fired.push_back(rule.id);
          changed = true;
        }
      }
      if (!changed) return;
    }
  }

  std::vector<std::string> fired;
};

}  // namespace

std::span<const InspectionRule> ShippedRules() {
  static const std::vector<InspectionRule> kRules = MakeRules();
  return kRules;
}

const InspectionRule& RuleById(std::string_view id) {
  for (const auto& r : ShippedRules()) {
    if (r.id == id) return r;
  }
  throw std::out_of_range("unknown inspection " + std::string(id));
}

std::vector<std::string> ApplyInspections(Expr& expr) {
  Rewriter r;
  r.Visit(expr);
  return r.fired;
}

std::vector<std::string> ApplyInspections(Stmt& stmt) {
  Rewriter r;
  r.Visit(stmt);
  return r.fired;
}

std::vector<std::string> ApplyInspections(syntax::FunctionDecl& fn) {
  Rewriter r;
  r.Visit(fn.body);
  if (fn.expression_body &&
      (fn.body.statements.size() != 1 || fn.body.statements[0].kind != StmtKind::kReturn ||
       fn.body.statements[0].exprs.empty())) {
    fn.expression_body = false;
  }
  return r.fired;
}

syntax::SourceModule ApplyInspections(syntax::SourceModule module,
                                      std::vector<std::string>* fired) {
  Rewriter r;
  for (auto& fn : module.functions) r.Visit(fn.body);
  for (auto& s : module.top_level) r.Visit(s);
  if (fired) *fired = std::move(r.fired);
  return module;
}

std::vector<std::string> FindInspectionHits(const Stmt& stmt) {
  Stmt copy = stmt;
  return ApplyInspections(copy);
}

std::vector<std::string> FindInspectionHits(const syntax::FunctionDecl& fn) {
  syntax::FunctionDecl copy = fn;
  return ApplyInspections(copy);
}

}  // namespace stepwise::hints
