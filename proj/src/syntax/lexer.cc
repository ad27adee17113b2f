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

#include "lexer.h"

#include <array>
#include <cctype>

#include "stepwise/syntax/parser.h"

namespace stepwise::syntax::internal {
namespace {

constexpr std::array<std::string_view, 15> kKeywords = {
    "fun",    "val",   "var",      "if",   "else", "when",  "for",  "while",
    "do",     "return", "break", "continue", "in", "true", "false"};

constexpr std::array<std::string_view, 15> kTwoCharPuncts = {
    "->", "..", "+=", "-=", "*=", "/=", "%=", "++",
    "--", "==", "!=", "<=", ">=", "&&", "||"};

constexpr std::string_view kOneCharPuncts = "(){}[],:;.+-*/%=<>!";

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    std::vector<LexedComment> comments;
    bool newline = false;
    int last_token_line = 0;
    while (true) {
      SkipSpaces(newline);
      if (AtEnd()) break;
      if (Peek() == '/' && (Peek(1) == '/' || Peek(1) == '*')) {
        LexedComment c;
        c.comment = LexComment();
        c.end_of_line = !out.empty() && last_token_line == c.comment.span.begin.line;
        comments.push_back(std::move(c));
        continue;
      }
      Token tok = LexToken();
      tok.newline_before = newline;
      tok.comments = std::move(comments);
      comments.clear();
      newline = false;
      last_token_line = tok.span.end.line;
      out.push_back(std::move(tok));
    }
    Token eof;
    eof.kind = TokenKind::kEof;
    eof.span.begin = eof.span.end = Here();
    eof.newline_before = true;
    eof.comments = std::move(comments);
    out.push_back(std::move(eof));
    return out;
  }

 private:
  bool AtEnd() const { return pos_ >= src_.size(); }
  char Peek(size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  Position Here() const { return {line_, column_, static_cast<int>(pos_)}; }

  void Bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw SyntaxError(line_, column_, msg);
  }

  void SkipSpaces(bool& newline) {
    while (!AtEnd()) {
      char c = Peek();
      if (c == '\n') {
        newline = true;
        Bump();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        Bump();
      } else {
        break;
      }
    }
  }

  Comment LexComment() {
    Comment c;
    c.span.begin = Here();
    size_t start = pos_;
    if (Peek(1) == '/') {
      c.style = Comment::Style::kLine;
      while (!AtEnd() && Peek() != '\n') Bump();
    } else {
      c.style = Comment::Style::kBlock;
      Bump();
      Bump();
      while (!(Peek() == '*' && Peek(1) == '/')) {
        if (AtEnd()) Fail("unterminated block comment");
        Bump();
      }
      Bump();
      Bump();
    }
    c.span.end = Here();
    c.text = std::string(src_.substr(start, pos_ - start));
    // Keep line comments free of trailing carriage returns.
    while (!c.text.empty() && (c.text.back() == '\r' || c.text.back() == ' ')) {
      c.text.pop_back();
    }
    return c;
  }

  Token LexToken() {
    Token tok;
    tok.span.begin = Here();
    char c = Peek();
    if (IsIdentStart(c)) {
      size_t start = pos_;
      while (!AtEnd() && IsIdentChar(Peek())) Bump();
      tok.text = std::string(src_.substr(start, pos_ - start));
      tok.kind = TokenKind::kIdentifier;
      for (auto kw : kKeywords) {
        if (tok.text == kw) tok.kind = TokenKind::kKeyword;
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (!AtEnd() && std::isdigit(static_cast<unsigned char>(Peek()))) Bump();
      if (IsIdentStart(Peek())) Fail("malformed number literal");
      tok.text = std::string(src_.substr(start, pos_ - start));
      tok.kind = TokenKind::kInt;
    } else if (c == '"') {
      tok.kind = TokenKind::kString;
      tok.text = LexString();
    } else {
      tok.kind = TokenKind::kPunct;
      std::string_view two = src_.substr(pos_, 2);
      bool matched = false;
      for (auto p : kTwoCharPuncts) {
        if (two == p) {
          tok.text = std::string(p);
          Bump();
          Bump();
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (kOneCharPuncts.find(c) == std::string_view::npos) {
          Fail(std::string("unexpected character '") + c + "'");
        }
        tok.text = std::string(1, c);
        Bump();
      }
    }
    tok.span.end = Here();
    return tok;
  }

  std::string LexString() {
    if (src_.substr(pos_, 3) == "\"\"\"") Fail("raw strings are not supported");
    Bump();
    std::string value;
    while (true) {
      if (AtEnd() || Peek() == '\n') Fail("unterminated string literal");
      char c = Peek();
      if (c == '"') {
        Bump();
        return value;
      }
      if (c == '$' && (IsIdentStart(Peek(1)) || Peek(1) == '{')) {
        Fail("string templates are not supported");
      }
      if (c == '\\') {
        Bump();
        char e = Peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          case 'b': value += '\b'; break;
          case '\\': value += '\\'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '$': value += '$'; break;
          default: Fail(std::string("unknown escape sequence '\\") + e + "'");
        }
        Bump();
        continue;
      }
      value += c;
      Bump();
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view source) {
  return Lexer(source).Run();
}

}  // namespace stepwise::syntax::internal
