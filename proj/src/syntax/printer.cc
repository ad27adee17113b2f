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

#include "stepwise/syntax/printer.h"

#include <vector>

namespace stepwise::syntax {
namespace {

constexpr int kIndentWidth = 4;

// Binding strength, loosest first.
enum Level {
  kLevelDisjunction = 1,
  kLevelConjunction,
  kLevelEquality,
  kLevelComparison,
  kLevelNamedCheck,
  kLevelInfixCall,
  kLevelRange,
  kLevelAdditive,
  kLevelMultiplicative,
  kLevelPrefix,
  kLevelPostfix,
  kLevelPrimary,
};

int BinaryLevel(const std::string& op) {
  if (op == "||") return kLevelDisjunction;
  if (op == "&&") return kLevelConjunction;
  if (op == "==" || op == "!=") return kLevelEquality;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return kLevelComparison;
  if (op == "in" || op == "!in") return kLevelNamedCheck;
  if (op == "until" || op == "downTo" || op == "step") return kLevelInfixCall;
  if (op == "+" || op == "-") return kLevelAdditive;
  return kLevelMultiplicative;
}

int LevelOf(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kBinary:
      return BinaryLevel(e.text);
    case ExprKind::kRange:
      return kLevelRange;
    case ExprKind::kUnary:
      return e.text == "in" || e.text == "!in" ? 0 : kLevelPrefix;
    case ExprKind::kCall:
    case ExprKind::kMember:
    case ExprKind::kIndex:
      return kLevelPostfix;
    default:
      return kLevelPrimary;
  }
}

std::string Render(const Expr& e, int min_level);

std::string RenderRaw(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kIntLiteral:
    case ExprKind::kBoolLiteral:
    case ExprKind::kName:
      return e.text;
    case ExprKind::kStringLiteral:
      return QuoteString(e.text);
    case ExprKind::kCall: {
      std::string out = Render(e.operands[0], kLevelPostfix) + "(";
      for (size_t i = 1; i < e.operands.size(); ++i) {
        if (i > 1) out += ", ";
        out += Render(e.operands[i], 0);
      }
      return out + ")";
    }
    case ExprKind::kMember:
      return Render(e.operands[0], kLevelPostfix) + "." + e.text;
    case ExprKind::kIndex:
      return Render(e.operands[0], kLevelPostfix) + "[" +
             Render(e.operands[1], 0) + "]";
    case ExprKind::kRange:
      return Render(e.operands[0], kLevelRange) + ".." +
             Render(e.operands[1], kLevelRange + 1);
    case ExprKind::kUnary: {
      if (e.text == "in" || e.text == "!in") {
        return e.text + " " + Render(e.operands[0], 0);
      }
      const Expr& operand = e.operands[0];
      // `- -x` must not collapse into the decrement token.
      bool wrap = operand.kind == ExprKind::kUnary && e.text != "!";
      std::string inner = Render(operand, kLevelPrefix);
      return e.text + (wrap ? "(" + inner + ")" : inner);
    }
    case ExprKind::kBinary: {
      int level = BinaryLevel(e.text);
      return Render(e.operands[0], level) + " " + e.text + " " +
             Render(e.operands[1], level + 1);
    }
  }
  return {};
}

std::string Render(const Expr& e, int min_level) {
  std::string s = RenderRaw(e);
  if (LevelOf(e) < min_level) return "(" + s + ")";
  return s;
}

std::string SimpleText(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::kVarDecl: {
      std::string out = (s.is_var ? "var " : "val ") + s.name;
      if (!s.type_name.empty()) out += ": " + s.type_name;
      if (!s.exprs.empty()) out += " = " + PrintExpr(s.exprs[0]);
      return out;
    }
    case StmtKind::kAssign:
      if (s.exprs.size() < 2) return PrintExpr(s.exprs[0]) + s.op;
      return PrintExpr(s.exprs[0]) + " " + s.op + " " + PrintExpr(s.exprs[1]);
    case StmtKind::kExprStmt:
      return PrintExpr(s.exprs[0]);
    case StmtKind::kReturn:
      return s.exprs.empty() ? "return" : "return " + PrintExpr(s.exprs[0]);
    case StmtKind::kBreak:
      return "break";
    case StmtKind::kContinue:
      return "continue";
    default:
      return {};
  }
}

class Emitter {
 public:
  explicit Emitter(PrintOptions options) : options_(options) {}

  std::vector<std::string>& lines() { return lines_; }

  void Line(int indent, const std::string& text) {
    lines_.push_back(std::string(indent * kIndentWidth, ' ') + text);
  }

  void Comments(const std::vector<Comment>& comments, int indent) {
    if (!options_.comments) return;
    for (const auto& c : comments) Line(indent, c.text);
  }

  void Trailing(const std::optional<Comment>& c) {
    if (options_.comments && c) lines_.back() += " " + c->text;
  }

  // Emits `head {`, the block contents and `}`. Empty blocks print as `{}`.
  void Braced(int indent, const std::string& head, const Block& block) {
    bool empty = block.statements.empty() &&
                 (block.dangling.empty() || !options_.comments);
    if (empty) {
      Line(indent, head + " {}");
      return;
    }
    Line(indent, head + " {");
    for (const auto& s : block.statements) Stmt(s, indent + 1);
    Comments(block.dangling, indent + 1);
    Line(indent, "}");
  }

  // Appends `text` to the last emitted line (used for `} else {`).
  void Join(const std::string& text) { lines_.back() += text; }

  void Stmt(const syntax::Stmt& s, int indent) {
    Comments(s.leading, indent);
    switch (s.kind) {
      case StmtKind::kIf:
        If(s, indent, "");
        break;
      case StmtKind::kWhen:
        When(s, indent);
        break;
      case StmtKind::kFor:
      case StmtKind::kWhile:
        Braced(indent, PrintHeader(s), s.bodies[0]);
        break;
      case StmtKind::kDoWhile:
        Braced(indent, "do", s.bodies[0]);
        Join(" while (" + PrintExpr(s.exprs[0]) + ")");
        break;
      default:
        Line(indent, SimpleText(s));
        break;
    }
    Trailing(s.trailing);
  }

  void If(const syntax::Stmt& s, int indent, const std::string& prefix) {
    Braced(indent, prefix + PrintHeader(s), s.bodies[0]);
    if (s.bodies.size() < 2) return;
    const Block& otherwise = s.bodies[1];
    bool chain = otherwise.statements.size() == 1 &&
                 otherwise.statements[0].kind == StmtKind::kIf &&
                 (!options_.comments ||
                  (otherwise.dangling.empty() &&
                   otherwise.statements[0].leading.empty() &&
                   !otherwise.statements[0].trailing));
    if (chain) {
      Emitter nested(options_);
      nested.If(otherwise.statements[0], indent, "");
      std::vector<std::string>& more = nested.lines();
      Join(" else " + more[0].substr(indent * kIndentWidth));
      for (size_t i = 1; i < more.size(); ++i) lines_.push_back(more[i]);
      return;
    }
    if (otherwise.statements.empty() &&
        (otherwise.dangling.empty() || !options_.comments)) {
      Join(" else {}");
      return;
    }
    Emitter nested(options_);
    nested.Braced(indent, "", otherwise);
    std::vector<std::string>& more = nested.lines();
    // more[0] is `<indent> {`
    Join(" else" + more[0].substr(indent * kIndentWidth));
    for (size_t i = 1; i < more.size(); ++i) lines_.push_back(more[i]);
  }

  void When(const syntax::Stmt& s, int indent) {
    if (s.branches.empty()) {
      Line(indent, PrintHeader(s) + " {}");
      return;
    }
    Line(indent, PrintHeader(s) + " {");
    for (size_t i = 0; i < s.branches.size(); ++i) {
      const WhenBranch& branch = s.branches[i];
      std::string cond;
      if (branch.conditions.empty()) {
        cond = "else";
      } else {
        for (size_t j = 0; j < branch.conditions.size(); ++j) {
          if (j > 0) cond += ", ";
          cond += PrintExpr(branch.conditions[j]);
        }
      }
      const Block& body = s.bodies[i];
      bool inline_body =
          body.statements.size() == 1 && !IsCompound(body.statements[0].kind) &&
          (!options_.comments ||
           (body.dangling.empty() && body.statements[0].leading.empty()));
      if (inline_body) {
        Line(indent + 1, cond + " -> " + SimpleText(body.statements[0]));
        Trailing(body.statements[0].trailing);
      } else {
        Braced(indent + 1, cond + " ->", body);
      }
    }
    Line(indent, "}");
  }

  void Function(const FunctionDecl& fn, int indent) {
    Comments(fn.leading, indent);
    const Block& body = fn.body;
    bool expression = fn.expression_body && body.statements.size() == 1 &&
                      body.statements[0].kind == StmtKind::kReturn &&
                      !body.statements[0].exprs.empty() &&
                      (!options_.comments ||
                       (body.dangling.empty() &&
                        body.statements[0].leading.empty() &&
                        !body.statements[0].trailing));
    if (expression) {
      Line(indent, PrintSignature(fn) + " = " +
                       PrintExpr(body.statements[0].exprs[0]));
    } else {
      Braced(indent, PrintSignature(fn), body);
    }
    Trailing(fn.trailing);
  }

  std::string Joined() const {
    std::string out;
    for (size_t i = 0; i < lines_.size(); ++i) {
      if (i > 0) out += '\n';
      out += lines_[i];
    }
    return out;
  }

 private:
  PrintOptions options_;
  std::vector<std::string> lines_;
};

}  // namespace

std::string QuoteString(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\b': out += "\\b"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '$': out += "\\$"; break;
      default: out += c; break;
    }
  }
  return out + "\"";
}

std::string PrintExpr(const Expr& expr) { return Render(expr, 0); }

std::string PrintHeader(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::kIf:
      return "if (" + PrintExpr(s.exprs[0]) + ")";
    case StmtKind::kWhile:
      return "while (" + PrintExpr(s.exprs[0]) + ")";
    case StmtKind::kDoWhile:
      return "do while (" + PrintExpr(s.exprs[0]) + ")";
    case StmtKind::kFor:
      return "for (" + s.name + " in " + PrintExpr(s.exprs[0]) + ")";
    case StmtKind::kWhen:
      return s.exprs.empty() ? "when" : "when (" + PrintExpr(s.exprs[0]) + ")";
    default:
      return SimpleText(s);
  }
}

std::string PrintSignature(const FunctionDecl& fn) {
  std::string out = "fun " + fn.name + "(";
  for (size_t i = 0; i < fn.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += fn.params[i].name + ": " + fn.params[i].type_name;
  }
  out += ")";
  if (!fn.return_type.empty()) out += ": " + fn.return_type;
  return out;
}

std::string PrintStmt(const Stmt& stmt, int indent, PrintOptions options) {
  Emitter e(options);
  e.Stmt(stmt, indent);
  return e.Joined();
}

std::string PrintFunction(const FunctionDecl& fn, int indent,
                          PrintOptions options) {
  Emitter e(options);
  e.Function(fn, indent);
  return e.Joined();
}

std::string Print(const SourceModule& module, PrintOptions options) {
  std::vector<std::string> chunks;
  if (!module.top_level.empty()) {
    Emitter e(options);
    for (const auto& s : module.top_level) e.Stmt(s, 0);
    chunks.push_back(e.Joined());
  }
  for (const auto& fn : module.functions) chunks.push_back(PrintFunction(fn, 0, options));
  if (options.comments && !module.dangling.empty()) {
    Emitter e(options);
    e.Comments(module.dangling, 0);
    chunks.push_back(e.Joined());
  }
  std::string out;
  for (size_t i = 0; i < chunks.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += chunks[i];
  }
  if (!out.empty()) out += '\n';
  return out;
}

}  // namespace stepwise::syntax
