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

// A tiny evaluator for Int/Boolean expressions and if/return statements,
// used as an oracle for semantics-preserving rewrites.

#ifndef STEPWISE_TESTS_SUPPORT_INTERP_H_
#define STEPWISE_TESTS_SUPPORT_INTERP_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "stepwise/syntax/ast.h"

namespace stepwise::testing {

using Value = std::variant<long long, bool>;
using Env = std::map<std::string, Value>;

inline long long AsInt(const Value& v) { return std::get<long long>(v); }
inline bool AsBool(const Value& v) { return std::get<bool>(v); }

inline Value Eval(const syntax::Expr& e, const Env& env) {
  using syntax::ExprKind;
  switch (e.kind) {
    case ExprKind::kIntLiteral:
      return std::stoll(e.text);
    case ExprKind::kBoolLiteral:
      return e.text == "true";
    case ExprKind::kName:
      return env.at(e.text);
    case ExprKind::kUnary: {
      Value v = Eval(e.operands[0], env);
      if (e.text == "!") return !AsBool(v);
      if (e.text == "-") return -AsInt(v);
      return v;
    }
    case ExprKind::kBinary: {
      const std::string& op = e.text;
      if (op == "&&") return AsBool(Eval(e.operands[0], env)) && AsBool(Eval(e.operands[1], env));
      if (op == "||") return AsBool(Eval(e.operands[0], env)) || AsBool(Eval(e.operands[1], env));
      if (op == "in" || op == "!in") {
        long long x = AsInt(Eval(e.operands[0], env));
        const syntax::Expr& r = e.operands[1];
        long long lo, hi;
        if (r.kind == ExprKind::kRange) {
          lo = AsInt(Eval(r.operands[0], env));
          hi = AsInt(Eval(r.operands[1], env));
        } else if (r.kind == ExprKind::kBinary && r.text == "until") {
          lo = AsInt(Eval(r.operands[0], env));
          hi = AsInt(Eval(r.operands[1], env)) - 1;
        } else if (r.kind == ExprKind::kBinary && r.text == "downTo") {
          hi = AsInt(Eval(r.operands[0], env));
          lo = AsInt(Eval(r.operands[1], env));
        } else {
          throw std::runtime_error("unsupported range");
        }
        bool in = lo <= x && x <= hi;
        return op == "in" ? in : !in;
      }
      Value l = Eval(e.operands[0], env);
      Value r = Eval(e.operands[1], env);
      if (op == "==") return l == r;
      if (op == "!=") return l != r;
      long long a = AsInt(l), b = AsInt(r);
      if (op == "<") return a < b;
      if (op == "<=") return a <= b;
      if (op == ">") return a > b;
      if (op == ">=") return a >= b;
      if (op == "+") return a + b;
      if (op == "-") return a - b;
      if (op == "*") return a * b;
      throw std::runtime_error("unsupported operator " + op);
    }
    default:
      throw std::runtime_error("unsupported expression");
  }
}

// Runs statements until a return; nullopt if none returns.
inline std::optional<Value> Exec(const syntax::Block& b, const Env& env);

inline std::optional<Value> Exec(const syntax::Stmt& s, const Env& env) {
  using syntax::StmtKind;
  switch (s.kind) {
    case StmtKind::kReturn:
      return Eval(s.exprs[0], env);
    case StmtKind::kIf:
      if (AsBool(Eval(s.exprs[0], env))) return Exec(s.bodies[0], env);
      if (s.bodies.size() > 1) return Exec(s.bodies[1], env);
      return std::nullopt;
    default:
      throw std::runtime_error("unsupported statement");
  }
}

inline std::optional<Value> Exec(const syntax::Block& b, const Env& env) {
  for (const auto& s : b.statements) {
    if (auto v = Exec(s, env)) return v;
  }
  return std::nullopt;
}

}  // namespace stepwise::testing

#endif  // STEPWISE_TESTS_SUPPORT_INTERP_H_
