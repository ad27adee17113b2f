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

#ifndef STEPWISE_SRC_SYNTAX_LEXER_H_
#define STEPWISE_SRC_SYNTAX_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "stepwise/syntax/ast.h"

namespace stepwise::syntax::internal {

enum class TokenKind { kIdentifier, kKeyword, kInt, kString, kPunct, kEof };

struct LexedComment {
  Comment comment;
  // The comment shares a line with the token before it.
  bool end_of_line = false;
};

struct Token {
  TokenKind kind = TokenKind::kEof;
  std::string text;  // decoded value for string literals
  Span span;
  bool newline_before = false;
  std::vector<LexedComment> comments;  // comments between this and the previous token

  bool Is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool IsPunct(std::string_view t) const { return Is(TokenKind::kPunct, t); }
  bool IsKeyword(std::string_view t) const { return Is(TokenKind::kKeyword, t); }
};

// The last token is always kEof. Throws SyntaxError.
std::vector<Token> Tokenize(std::string_view source);

}  // namespace stepwise::syntax::internal

#endif  // STEPWISE_SRC_SYNTAX_LEXER_H_
