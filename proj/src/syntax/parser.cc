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

#include "stepwise/syntax/parser.h"

#include <utility>

#include "lexer.h"

namespace stepwise::syntax {

SyntaxError::SyntaxError(int line, int column, std::string message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column),
      detail_(std::move(message)) {}

namespace {

using internal::Token;
using internal::TokenKind;

std::string Describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::kEof:
      return "end of input";
    case TokenKind::kString:
      return "string literal";
    case TokenKind::kInt:
      return "'" + tok.text + "'";
    default:
      return "'" + tok.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SourceModule ParseModule() {
    SourceModule module;
    while (!AtEof()) {
      if (Peek().IsPunct(";")) {
        Advance();
        continue;
      }
      if (Peek().IsKeyword("fun")) {
        module.functions.push_back(ParseFunction());
        module.functions.back().trailing = ClaimTrailing();
      } else {
        module.top_level.push_back(ParseStatement());
        module.top_level.back().trailing = ClaimTrailing();
      }
      ExpectTerminator();
    }
    module.dangling = TakeLeading();
    return module;
  }

  Expr ParseStandaloneExpression() {
    Expr e = ParseExpr();
    if (!AtEof()) Fail(Peek(), "end of input");
    return e;
  }

 private:
  // --- token plumbing -----------------------------------------------------

  const Token& Peek(size_t k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool AtEof() const { return Peek().kind == TokenKind::kEof; }

  Token& Advance() {
    Token& tok = toks_[pos_];
    for (auto& c : tok.comments) pending_.push_back(std::move(c.comment));
    tok.comments.clear();
    prev_end_ = tok.span.end;
    if (tok.kind == TokenKind::kPunct) {
      if (tok.text == "(" || tok.text == "[") ++paren_depth_;
      if ((tok.text == ")" || tok.text == "]") && paren_depth_ > 0) --paren_depth_;
    }
    if (pos_ + 1 < toks_.size()) ++pos_;
    return tok;
  }

  [[noreturn]] void Fail(const Token& at, const std::string& expected) const {
    throw SyntaxError(at.span.begin.line, at.span.begin.column,
                      "expected " + expected + ", found " + Describe(at));
  }

  Token& ExpectPunct(std::string_view p) {
    if (!Peek().IsPunct(p)) Fail(Peek(), "'" + std::string(p) + "'");
    return Advance();
  }
  Token& ExpectKeyword(std::string_view k) {
    if (!Peek().IsKeyword(k)) Fail(Peek(), "'" + std::string(k) + "'");
    return Advance();
  }
  std::string ExpectIdentifier(const char* what) {
    if (Peek().kind != TokenKind::kIdentifier) Fail(Peek(), what);
    return Advance().text;
  }

  // Comments preceding the next node.
  std::vector<Comment> TakeLeading() {
    Token& tok = toks_[pos_];
    for (auto& c : tok.comments) pending_.push_back(std::move(c.comment));
    tok.comments.clear();
    return std::exchange(pending_, {});
  }

  // An end-of-line comment on the line where the previous node ended.
  std::optional<Comment> ClaimTrailing() {
    Token& tok = toks_[pos_];
    if (!tok.comments.empty() && tok.comments.front().end_of_line &&
        tok.comments.front().comment.span.begin.line == prev_end_.line) {
      Comment c = std::move(tok.comments.front().comment);
      tok.comments.erase(tok.comments.begin());
      return c;
    }
    return std::nullopt;
  }

  void ExpectTerminator() {
    const Token& t = Peek();
    if (t.IsPunct(";")) {
      Advance();
      return;
    }
    if (t.kind == TokenKind::kEof || t.IsPunct("}") || t.newline_before) return;
    Fail(t, "newline or ';'");
  }

  // Kotlin ends an expression at a line break unless the next line starts
  // with an operator that cannot begin a statement.
  bool Continues(const Token& t) const {
    if (!t.newline_before || paren_depth_ > 0) return true;
    return t.IsPunct("&&") || t.IsPunct("||") || t.IsPunct(".");
  }

  // --- declarations ---------------------------------------------------------

  std::string ParseTypeName() {
    std::string type = ExpectIdentifier("type name");
    if (Peek().IsPunct("<")) {
      type += Advance().text;
      type += ParseTypeName();
      while (Peek().IsPunct(",")) {
        Advance();
        type += ", " + ParseTypeName();
      }
      type += ExpectPunct(">").text;
    }
    return type;
  }

  FunctionDecl ParseFunction() {
    FunctionDecl fn;
    fn.leading = TakeLeading();
    const Token& fun = ExpectKeyword("fun");
    fn.span.begin = fun.span.begin;
    fn.header_span.begin = fun.span.begin;
    fn.name = ExpectIdentifier("function name");
    ExpectPunct("(");
    while (!Peek().IsPunct(")")) {
      Parameter p;
      p.name = ExpectIdentifier("parameter name");
      ExpectPunct(":");
      p.type_name = ParseTypeName();
      fn.params.push_back(std::move(p));
      if (!Peek().IsPunct(",")) break;
      Advance();
    }
    ExpectPunct(")");
    if (Peek().IsPunct(":")) {
      Advance();
      fn.return_type = ParseTypeName();
    }
    fn.header_span.end = prev_end_;
    if (Peek().IsPunct("=")) {
      Advance();
      fn.expression_body = true;
      Stmt ret;
      ret.kind = StmtKind::kReturn;
      ret.leading = TakeLeading();
      ret.exprs.push_back(ParseExpr());
      ret.span = ret.exprs.front().span;
      fn.body.braced = false;
      fn.body.span = ret.span;
      fn.body.statements.push_back(std::move(ret));
    } else {
      if (!Peek().IsPunct("{")) Fail(Peek(), "'{' or '='");
      fn.body = ParseBlock();
    }
    fn.span.end = prev_end_;
    return fn;
  }

  Block ParseBlock() {
    Block block;
    block.braced = true;
    block.span.begin = ExpectPunct("{").span.begin;
    while (true) {
      while (Peek().IsPunct(";")) Advance();
      if (Peek().IsPunct("}")) break;
      if (AtEof()) Fail(Peek(), "'}'");
      block.statements.push_back(ParseStatement());
      block.statements.back().trailing = ClaimTrailing();
      ExpectTerminator();
    }
    block.dangling = TakeLeading();
    block.span.end = ExpectPunct("}").span.end;
    return block;
  }

  // Braced block or a single statement.
  Block ParseBody() {
    if (Peek().IsPunct("{")) return ParseBlock();
    Block block;
    block.braced = false;
    block.statements.push_back(ParseStatement());
    block.span = block.statements.back().span;
    return block;
  }

  // --- statements -----------------------------------------------------------

  Stmt ParseStatement() {
    std::vector<Comment> leading = TakeLeading();
    Position begin = Peek().span.begin;
    Stmt s;
    const Token& t = Peek();
    if (t.IsKeyword("val") || t.IsKeyword("var")) {
      s = ParseVarDecl();
    } else if (t.IsKeyword("if")) {
      s = ParseIf();
    } else if (t.IsKeyword("when")) {
      s = ParseWhen();
    } else if (t.IsKeyword("for")) {
      s = ParseFor();
    } else if (t.IsKeyword("while")) {
      s = ParseWhile();
    } else if (t.IsKeyword("do")) {
      s = ParseDoWhile();
    } else if (t.IsKeyword("return")) {
      Advance();
      s.kind = StmtKind::kReturn;
      const Token& n = Peek();
      if (!(n.newline_before || n.kind == TokenKind::kEof || n.IsPunct("}") ||
            n.IsPunct(";") || n.IsKeyword("else"))) {
        s.exprs.push_back(ParseExpr());
      }
    } else if (t.IsKeyword("break") || t.IsKeyword("continue")) {
      s.kind = t.text == "break" ? StmtKind::kBreak : StmtKind::kContinue;
      Advance();
    } else if (t.IsKeyword("fun")) {
      Fail(t, "statement (nested functions are not supported)");
    } else if (t.IsPunct("++") || t.IsPunct("--")) {
      s.kind = StmtKind::kAssign;
      s.op = Advance().text;
      s.exprs.push_back(ParsePostfix());
    } else {
      s = ParseExpressionStatement();
    }
    // Comments consumed inside the statement stay pending for the next node.
    s.leading = std::move(leading);
    s.span.begin = begin;
    s.span.end = prev_end_;
    return s;
  }

  Stmt ParseVarDecl() {
    Stmt s;
    s.kind = StmtKind::kVarDecl;
    s.is_var = Advance().text == "var";
    s.name = ExpectIdentifier("variable name");
    if (Peek().IsPunct(":")) {
      Advance();
      s.type_name = ParseTypeName();
    }
    if (Peek().IsPunct("=")) {
      Advance();
      s.exprs.push_back(ParseExpr());
    }
    return s;
  }

  Stmt ParseExpressionStatement() {
    Stmt s;
    Expr e = ParseExpr();
    const Token& t = Peek();
    static constexpr std::string_view kAssignOps[] = {"=", "+=", "-=", "*=",
                                                      "/=", "%="};
    for (auto op : kAssignOps) {
      if (t.IsPunct(op) && !t.newline_before) {
        if (e.kind != ExprKind::kName && e.kind != ExprKind::kMember &&
            e.kind != ExprKind::kIndex) {
          Fail(t, "end of statement (invalid assignment target)");
        }
        s.kind = StmtKind::kAssign;
        s.op = Advance().text;
        s.exprs.push_back(std::move(e));
        s.exprs.push_back(ParseExpr());
        return s;
      }
    }
    if ((t.IsPunct("++") || t.IsPunct("--")) && !t.newline_before) {
      s.kind = StmtKind::kAssign;
      s.op = Advance().text;
      s.exprs.push_back(std::move(e));
      return s;
    }
    s.kind = StmtKind::kExprStmt;
    s.exprs.push_back(std::move(e));
    return s;
  }

  Expr ParseParenthesized() {
    ExpectPunct("(");
    Expr e = ParseExpr();
    ExpectPunct(")");
    return e;
  }

  Stmt ParseIf() {
    Stmt s;
    s.kind = StmtKind::kIf;
    s.header_span.begin = Advance().span.begin;
    s.exprs.push_back(ParseParenthesized());
    s.header_span.end = prev_end_;
    s.bodies.push_back(ParseBody());
    // `else` may follow on the next line.
    if (Peek().IsKeyword("else")) {
      Advance();
      if (Peek().IsKeyword("if")) {
        Block chain;
        chain.braced = false;
        chain.statements.push_back(ParseStatement());
        chain.span = chain.statements.back().span;
        s.bodies.push_back(std::move(chain));
      } else {
        s.bodies.push_back(ParseBody());
      }
    }
    return s;
  }

  Expr ParseWhenCondition() {
    if (Peek().IsKeyword("in")) {
      Position begin = Advance().span.begin;
      Expr e = MakeUnary("in", ParseExpr());
      e.span = {begin, prev_end_};
      return e;
    }
    if (Peek().IsPunct("!") && Peek(1).IsKeyword("in")) {
      Position begin = Advance().span.begin;
      Advance();
      Expr e = MakeUnary("!in", ParseExpr());
      e.span = {begin, prev_end_};
      return e;
    }
    return ParseExpr();
  }

  Stmt ParseWhen() {
    Stmt s;
    s.kind = StmtKind::kWhen;
    s.header_span.begin = Advance().span.begin;
    if (Peek().IsPunct("(")) s.exprs.push_back(ParseParenthesized());
    s.header_span.end = prev_end_;
    ExpectPunct("{");
    while (true) {
      while (Peek().IsPunct(";")) Advance();
      if (Peek().IsPunct("}")) break;
      if (AtEof()) Fail(Peek(), "'}'");
      WhenBranch branch;
      branch.span.begin = Peek().span.begin;
      if (Peek().IsKeyword("else")) {
        Advance();
      } else {
        branch.conditions.push_back(ParseWhenCondition());
        while (Peek().IsPunct(",")) {
          Advance();
          branch.conditions.push_back(ParseWhenCondition());
        }
      }
      ExpectPunct("->");
      Block body = ParseBody();
      if (!body.braced) body.statements.back().trailing = ClaimTrailing();
      branch.span.end = prev_end_;
      s.branches.push_back(std::move(branch));
      s.bodies.push_back(std::move(body));
      ExpectTerminator();
    }
    ExpectPunct("}");
    return s;
  }

  Stmt ParseFor() {
    Stmt s;
    s.kind = StmtKind::kFor;
    s.header_span.begin = Advance().span.begin;
    ExpectPunct("(");
    s.name = ExpectIdentifier("loop variable");
    ExpectKeyword("in");
    s.exprs.push_back(ParseExpr());
    ExpectPunct(")");
    s.header_span.end = prev_end_;
    s.bodies.push_back(ParseBody());
    return s;
  }

  Stmt ParseWhile() {
    Stmt s;
    s.kind = StmtKind::kWhile;
    s.header_span.begin = Advance().span.begin;
    s.exprs.push_back(ParseParenthesized());
    s.header_span.end = prev_end_;
    s.bodies.push_back(ParseBody());
    return s;
  }

  Stmt ParseDoWhile() {
    Stmt s;
    s.kind = StmtKind::kDoWhile;
    Advance();
    s.bodies.push_back(ParseBody());
    s.header_span.begin = ExpectKeyword("while").span.begin;
    s.exprs.push_back(ParseParenthesized());
    s.header_span.end = prev_end_;
    return s;
  }

  // --- expressions ----------------------------------------------------------

  Expr Finish(Expr e, Position begin) {
    e.span = {begin, prev_end_};
    return e;
  }

  Expr ParseExpr() { return ParseDisjunction(); }

  template <typename Next>
  Expr ParseLeftAssoc(std::initializer_list<std::string_view> ops, Next next) {
    Position begin = Peek().span.begin;
    Expr lhs = (this->*next)();
    while (true) {
      const Token& t = Peek();
      std::string_view matched;
      for (auto op : ops) {
        if (t.IsPunct(op)) matched = op;
      }
      if (matched.empty() || !Continues(t)) return lhs;
      Advance();
      Expr rhs = (this->*next)();
      lhs = Finish(MakeBinary(std::string(matched), std::move(lhs), std::move(rhs)),
                   begin);
    }
  }

  Expr ParseDisjunction() {
    return ParseLeftAssoc({"||"}, &Parser::ParseConjunction);
  }
  Expr ParseConjunction() {
    return ParseLeftAssoc({"&&"}, &Parser::ParseEquality);
  }
  Expr ParseEquality() {
    return ParseLeftAssoc({"==", "!="}, &Parser::ParseComparison);
  }
  Expr ParseComparison() {
    return ParseLeftAssoc({"<", ">", "<=", ">="}, &Parser::ParseNamedCheck);
  }

  Expr ParseNamedCheck() {
    Position begin = Peek().span.begin;
    Expr lhs = ParseInfixCall();
    while (true) {
      const Token& t = Peek();
      std::string op;
      if (t.IsKeyword("in") && Continues(t)) {
        op = "in";
        Advance();
      } else if (t.IsPunct("!") && Peek(1).IsKeyword("in") && Continues(t)) {
        op = "!in";
        Advance();
        Advance();
      } else {
        return lhs;
      }
      Expr rhs = ParseInfixCall();
      lhs = Finish(MakeBinary(op, std::move(lhs), std::move(rhs)), begin);
    }
  }

  // `until`, `downTo` and `step` are the only infix functions in the subset.
  Expr ParseInfixCall() {
    Position begin = Peek().span.begin;
    Expr lhs = ParseRange();
    while (true) {
      const Token& t = Peek();
      if (t.kind != TokenKind::kIdentifier || t.newline_before ||
          (t.text != "until" && t.text != "downTo" && t.text != "step")) {
        return lhs;
      }
      std::string op = Advance().text;
      Expr rhs = ParseRange();
      lhs = Finish(MakeBinary(op, std::move(lhs), std::move(rhs)), begin);
    }
  }

  Expr ParseRange() {
    Position begin = Peek().span.begin;
    Expr lhs = ParseAdditive();
    while (Peek().IsPunct("..") && Continues(Peek())) {
      Advance();
      Expr rhs = ParseAdditive();
      Expr range;
      range.kind = ExprKind::kRange;
      range.operands.push_back(std::move(lhs));
      range.operands.push_back(std::move(rhs));
      lhs = Finish(std::move(range), begin);
    }
    return lhs;
  }

  Expr ParseAdditive() {
    return ParseLeftAssoc({"+", "-"}, &Parser::ParseMultiplicative);
  }
  Expr ParseMultiplicative() {
    return ParseLeftAssoc({"*", "/", "%"}, &Parser::ParsePrefix);
  }

  Expr ParsePrefix() {
    const Token& t = Peek();
    if (t.IsPunct("-") || t.IsPunct("+") || t.IsPunct("!")) {
      Position begin = t.span.begin;
      std::string op = Advance().text;
      Expr operand = ParsePrefix();
      return Finish(MakeUnary(op, std::move(operand)), begin);
    }
    return ParsePostfix();
  }

  Expr ParsePostfix() {
    Position begin = Peek().span.begin;
    Expr e = ParsePrimary();
    while (true) {
      const Token& t = Peek();
      if (t.IsPunct("(") && !t.newline_before) {
        Advance();
        Expr call;
        call.kind = ExprKind::kCall;
        call.operands.push_back(std::move(e));
        while (!Peek().IsPunct(")")) {
          call.operands.push_back(ParseExpr());
          if (!Peek().IsPunct(",")) break;
          Advance();
        }
        ExpectPunct(")");
        e = Finish(std::move(call), begin);
      } else if (t.IsPunct(".") && Continues(t)) {
        Advance();
        Expr member;
        member.kind = ExprKind::kMember;
        member.text = ExpectIdentifier("member name");
        member.operands.push_back(std::move(e));
        e = Finish(std::move(member), begin);
      } else if (t.IsPunct("[") && !t.newline_before) {
        Advance();
        Expr index;
        index.kind = ExprKind::kIndex;
        index.operands.push_back(std::move(e));
        index.operands.push_back(ParseExpr());
        ExpectPunct("]");
        e = Finish(std::move(index), begin);
      } else {
        return e;
      }
    }
  }

  Expr ParsePrimary() {
    const Token& t = Peek();
    Position begin = t.span.begin;
    Expr e;
    switch (t.kind) {
      case TokenKind::kInt:
        e.kind = ExprKind::kIntLiteral;
        e.text = Advance().text;
        return Finish(std::move(e), begin);
      case TokenKind::kString:
        e.kind = ExprKind::kStringLiteral;
        e.text = Advance().text;
        return Finish(std::move(e), begin);
      case TokenKind::kIdentifier:
        e.kind = ExprKind::kName;
        e.text = Advance().text;
        return Finish(std::move(e), begin);
      case TokenKind::kKeyword:
        if (t.text == "true" || t.text == "false") {
          e.kind = ExprKind::kBoolLiteral;
          e.text = Advance().text;
          return Finish(std::move(e), begin);
        }
        break;
      case TokenKind::kPunct:
        if (t.text == "(") {
          Advance();
          Expr inner = ParseExpr();
          ExpectPunct(")");
          // Parentheses are not kept; the printer re-derives them.
          return inner;
        }
        break;
      case TokenKind::kEof:
        break;
    }
    Fail(t, "expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  int paren_depth_ = 0;
  Position prev_end_{1, 1, 0};
  std::vector<Comment> pending_;
};

}  // namespace

SourceModule Parse(std::string_view source) {
  return Parser(internal::Tokenize(source)).ParseModule();
}

Expr ParseExpression(std::string_view source) {
  return Parser(internal::Tokenize(source)).ParseStandaloneExpression();
}

}  // namespace stepwise::syntax
