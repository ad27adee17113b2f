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

#ifndef STEPWISE_SYNTAX_QUERIES_H_
#define STEPWISE_SYNTAX_QUERIES_H_

#include <string>
#include <vector>

#include "stepwise/syntax/ast.h"

namespace stepwise::syntax {

// `name(p1: T1, p2: T2): R`, one per function in declaration order.
std::vector<std::string> ExtractSignatures(const SourceModule& module);

// Distinct decoded string literals in first-occurrence order.
std::vector<std::string> ExtractStringLiterals(const SourceModule& module);

SourceModule StripComments(SourceModule module);
void StripComments(FunctionDecl& fn);
void StripComments(Stmt& stmt);
void StripComments(Block& block);

int CountComments(const SourceModule& module);
int CountComments(const FunctionDecl& fn);
int CountComments(const Stmt& stmt);

const FunctionDecl* FindFunction(const SourceModule& module,
                                 const FunctionKey& key);
FunctionDecl* FindFunction(SourceModule& module, const FunctionKey& key);

}  // namespace stepwise::syntax

#endif  // STEPWISE_SYNTAX_QUERIES_H_
