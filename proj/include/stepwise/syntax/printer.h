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

#ifndef STEPWISE_SYNTAX_PRINTER_H_
#define STEPWISE_SYNTAX_PRINTER_H_

#include <string>

#include "stepwise/syntax/ast.h"

namespace stepwise::syntax {

struct PrintOptions {
  bool comments = true;
};

// Deterministic layout: 4-space indent, one statement per line, a blank line
// between top-level declarations. Output ends with a newline unless empty.
std::string Print(const SourceModule& module, PrintOptions options = {});

// `indent` is the nesting depth of the first line. Continuation lines are
// indented relative to it; the result has no trailing newline.
std::string PrintFunction(const FunctionDecl& fn, int indent = 0,
                          PrintOptions options = {});
std::string PrintStmt(const Stmt& stmt, int indent = 0,
                      PrintOptions options = {});
std::string PrintExpr(const Expr& expr);

// Controlling part only: `if (c)`, `for (x in xs)`, `while (c)`, `when (s)`,
// and `fun f(a: Int): Int` for functions. Do-while prints as `do while (c)`.
std::string PrintHeader(const Stmt& stmt);
std::string PrintSignature(const FunctionDecl& fn);

// Kotlin string literal with quotes and escapes.
std::string QuoteString(std::string_view value);

}  // namespace stepwise::syntax

#endif  // STEPWISE_SYNTAX_PRINTER_H_
