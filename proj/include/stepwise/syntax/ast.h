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

#ifndef STEPWISE_SYNTAX_AST_H_
#define STEPWISE_SYNTAX_AST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stepwise::syntax {

// 1-based line/column; offset is a byte index into the source text.
struct Position {
  int line = 0;
  int column = 0;
  int offset = 0;
};

// Half-open in offsets: [begin.offset, end.offset).
struct Span {
  Position begin;
  Position end;

  bool valid() const { return begin.line > 0; }
};

struct Comment {
  enum class Style { kLine, kBlock };
  Style style = Style::kLine;
  std::string text;  // including the `//` or `/* */` delimiters
  Span span;
};

enum class ExprKind {
  kIntLiteral,
  kBoolLiteral,
  kStringLiteral,
  kName,
  kCall,    // operands[0] = callee, operands[1..] = arguments
  kMember,  // operands[0] = receiver, text = member name
  kIndex,   // operands[0] = target, operands[1] = index
  kBinary,  // text = operator, operands = {lhs, rhs}
  kUnary,   // text = operator, operands = {operand}; "in" only in when-branches
  kRange,   // operands = {low, high}
};

struct Expr {
  ExprKind kind = ExprKind::kName;
  // Literal value (strings are stored decoded), identifier, operator or
  // member name depending on `kind`.
  std::string text;
  std::vector<Expr> operands;
  Span span;
};

enum class StmtKind {
  kVarDecl,
  kAssign,
  kExprStmt,
  kReturn,
  kBreak,
  kContinue,
  kIf,
  kWhen,
  kFor,
  kWhile,
  kDoWhile,
};

struct Stmt;

struct Block {
  std::vector<Stmt> statements;
  // Comments after the last statement, before the closing brace.
  std::vector<Comment> dangling;
  bool braced = true;
  Span span;
};

struct WhenBranch {
  std::vector<Expr> conditions;  // empty for the `else` branch
  Span span;
};

// One statement. The payload fields in use depend on `kind`:
//   kVarDecl   name, type_name, is_var, exprs = {init}?
//   kAssign    op, exprs = {target, value?}   (value absent for ++/--)
//   kExprStmt  exprs = {expr}
//   kReturn    exprs = {value}?
//   kIf        exprs = {condition}, bodies = {then, else?}
//   kWhen      exprs = {subject}?, branches, bodies (parallel to branches)
//   kFor       name (loop variable), exprs = {iterable}, bodies = {body}
//   kWhile     exprs = {condition}, bodies = {body}
//   kDoWhile   exprs = {condition}, bodies = {body}
struct Stmt {
  StmtKind kind = StmtKind::kExprStmt;
  std::string name;
  std::string type_name;
  std::string op;
  bool is_var = false;
  std::vector<Expr> exprs;
  std::vector<Block> bodies;
  std::vector<WhenBranch> branches;

  std::vector<Comment> leading;
  std::optional<Comment> trailing;
  Span span;
  // From the construct keyword to the end of its controlling part, e.g.
  // `if (x > 0)`. Invalid for simple statements.
  Span header_span;
};

struct Parameter {
  std::string name;
  std::string type_name;
};

struct FunctionDecl {
  std::string name;
  std::vector<Parameter> params;
  std::string return_type;  // empty when omitted
  // `fun f(): Int = expr`; the body then holds a single return statement.
  bool expression_body = false;
  Block body;

  std::vector<Comment> leading;
  std::optional<Comment> trailing;
  Span span;
  Span header_span;
};

struct SourceModule {
  std::vector<FunctionDecl> functions;
  std::vector<Stmt> top_level;
  std::vector<Comment> dangling;
};

// Functions are identified by name and arity throughout the engine.
struct FunctionKey {
  std::string name;
  int arity = 0;

  std::string ToString() const;
  friend bool operator==(const FunctionKey&, const FunctionKey&) = default;
  friend auto operator<=>(const FunctionKey&, const FunctionKey&) = default;
};

// Name used for the pseudo-function holding a script's top-level statements.
inline constexpr std::string_view kTopLevelName = "<top-level>";

FunctionKey KeyOf(const FunctionDecl& fn);

bool IsCompound(StmtKind kind);
std::string_view StmtKindName(StmtKind kind);

// Number of non-blank, non-comment lines of the function body as printed.
int BodyLineCount(const FunctionDecl& fn);

// Structural equality: ignores spans and formatting. Comments are compared
// only when `compare_comments` is set. An absent else branch equals an
// empty one.
bool Equivalent(const Expr& a, const Expr& b);
bool Equivalent(const Stmt& a, const Stmt& b, bool compare_comments = false);
bool Equivalent(const Block& a, const Block& b, bool compare_comments = false);
bool Equivalent(const FunctionDecl& a, const FunctionDecl& b,
                bool compare_comments = false);
bool Equivalent(const SourceModule& a, const SourceModule& b,
                bool compare_comments = false);

// Factories used by the rewriters.
Expr MakeName(std::string name);
Expr MakeString(std::string value);
Expr MakeBool(bool value);
Expr MakeCall(std::string callee, std::vector<Expr> args);
Expr MakeBinary(std::string op, Expr lhs, Expr rhs);
Expr MakeUnary(std::string op, Expr operand);
Stmt MakeExprStmt(Expr expr);
Stmt MakeReturn(std::optional<Expr> value);

}  // namespace stepwise::syntax

#endif  // STEPWISE_SYNTAX_AST_H_
