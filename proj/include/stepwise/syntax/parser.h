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

#ifndef STEPWISE_SYNTAX_PARSER_H_
#define STEPWISE_SYNTAX_PARSER_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "stepwise/syntax/ast.h"

namespace stepwise::syntax {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, std::string message);

  int line() const { return line_; }
  int column() const { return column_; }
  // The message without the "line:column:" prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

// Parses a teaching-subset source file. Comments are kept as trivia on the
// nearest following node (or on their own line's node for end-of-line
// comments). Throws SyntaxError.
SourceModule Parse(std::string_view source);

// Parses a single expression (the whole input must be consumed).
Expr ParseExpression(std::string_view source);

}  // namespace stepwise::syntax

#endif  // STEPWISE_SYNTAX_PARSER_H_
