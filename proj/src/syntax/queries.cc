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

#include "stepwise/syntax/queries.h"

#include <algorithm>

namespace stepwise::syntax {
namespace {

void CollectStrings(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == ExprKind::kStringLiteral &&
      std::find(out.begin(), out.end(), e.text) == out.end()) {
    out.push_back(e.text);
  }
  for (const auto& o : e.operands) CollectStrings(o, out);
}

void CollectStrings(const Block& b, std::vector<std::string>& out);

void CollectStrings(const Stmt& s, std::vector<std::string>& out) {
  if (s.kind == StmtKind::kDoWhile) {
    CollectStrings(s.bodies[0], out);
    CollectStrings(s.exprs[0], out);
    return;
  }
  for (const auto& e : s.exprs) CollectStrings(e, out);
  for (size_t i = 0; i < s.bodies.size(); ++i) {
    if (i < s.branches.size()) {
      for (const auto& c : s.branches[i].conditions) CollectStrings(c, out);
    }
    CollectStrings(s.bodies[i], out);
  }
}

void CollectStrings(const Block& b, std::vector<std::string>& out) {
  for (const auto& s : b.statements) CollectStrings(s, out);
}

int Count(const Block& b);

int Count(const Stmt& s) {
  int n = static_cast<int>(s.leading.size()) + (s.trailing ? 1 : 0);
  for (const auto& b : s.bodies) n += Count(b);
  return n;
}

int Count(const Block& b) {
  int n = static_cast<int>(b.dangling.size());
  for (const auto& s : b.statements) n += Count(s);
  return n;
}

}  // namespace

std::vector<std::string> ExtractSignatures(const SourceModule& module) {
  std::vector<std::string> out;
  for (const auto& fn : module.functions) {
    std::string sig = fn.name + "(";
    for (size_t i = 0; i < fn.params.size(); ++i) {
      if (i > 0) sig += ", ";
      sig += fn.params[i].name + ": " + fn.params[i].type_name;
    }
    sig += ")";
    if (!fn.return_type.empty()) sig += ": " + fn.return_type;
    out.push_back(std::move(sig));
  }
  return out;
}

std::vector<std::string> ExtractStringLiterals(const SourceModule& module) {
  // Top-level statements and functions may interleave in the source text.
  // Items are (offset, index); negative indices denote functions.
  std::vector<std::pair<int, int>> items;
  for (size_t i = 0; i < module.top_level.size(); ++i) {
    items.emplace_back(module.top_level[i].span.begin.offset, static_cast<int>(i));
  }
  for (size_t i = 0; i < module.functions.size(); ++i) {
    items.emplace_back(module.functions[i].span.begin.offset, -1 - static_cast<int>(i));
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (const auto& [offset, index] : items) {
    if (index < 0) {
      CollectStrings(module.functions[-1 - index].body, out);
    } else {
      CollectStrings(module.top_level[index], out);
    }
  }
  return out;
}

void StripComments(Block& block) {
  block.dangling.clear();
  for (auto& s : block.statements) StripComments(s);
}

void StripComments(Stmt& stmt) {
  stmt.leading.clear();
  stmt.trailing.reset();
  for (auto& b : stmt.bodies) StripComments(b);
}

void StripComments(FunctionDecl& fn) {
  fn.leading.clear();
  fn.trailing.reset();
  StripComments(fn.body);
}

SourceModule StripComments(SourceModule module) {
  module.dangling.clear();
  for (auto& fn : module.functions) StripComments(fn);
  for (auto& s : module.top_level) StripComments(s);
  return module;
}

int CountComments(const Stmt& stmt) { return Count(stmt); }

int CountComments(const FunctionDecl& fn) {
  return static_cast<int>(fn.leading.size()) + (fn.trailing ? 1 : 0) + Count(fn.body);
}

int CountComments(const SourceModule& module) {
  int n = static_cast<int>(module.dangling.size());
  for (const auto& fn : module.functions) n += CountComments(fn);
  for (const auto& s : module.top_level) n += Count(s);
  return n;
}

const FunctionDecl* FindFunction(const SourceModule& module, const FunctionKey& key) {
  for (const auto& fn : module.functions) {
    if (KeyOf(fn) == key) return &fn;
  }
  return nullptr;
}

FunctionDecl* FindFunction(SourceModule& module, const FunctionKey& key) {
  for (auto& fn : module.functions) {
    if (KeyOf(fn) == key) return &fn;
  }
  return nullptr;
}

}  // namespace stepwise::syntax
