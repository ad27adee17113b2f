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

#include "stepwise/diff/ast_diff.h"

#include <algorithm>
#include <map>

#include "stepwise/syntax/printer.h"
#include "stepwise/syntax/queries.h"

namespace stepwise::diff {

using syntax::Block;
using syntax::FunctionDecl;
using syntax::FunctionKey;
using syntax::SourceModule;
using syntax::Stmt;
using syntax::StmtKind;

std::string_view ChangeKindName(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::kAddConstruct: return "AddConstruct";
    case ChangeKind::kDeleteConstruct: return "DeleteConstruct";
    case ChangeKind::kHeaderModification: return "HeaderModification";
    case ChangeKind::kBodyStatementModification: return "BodyStatementModification";
  }
  return "?";
}

std::string_view ConstructName(Construct construct) {
  switch (construct) {
    case Construct::kFunctionDecl: return "FunctionDecl";
    case Construct::kIf: return "If";
    case Construct::kWhen: return "When";
    case Construct::kFor: return "For";
    case Construct::kWhile: return "While";
    case Construct::kDoWhile: return "DoWhile";
    case Construct::kStatement: return "Statement";
  }
  return "?";
}

Construct ConstructOf(StmtKind kind) {
  switch (kind) {
    case StmtKind::kIf: return Construct::kIf;
    case StmtKind::kWhen: return Construct::kWhen;
    case StmtKind::kFor: return Construct::kFor;
    case StmtKind::kWhile: return Construct::kWhile;
    case StmtKind::kDoWhile: return Construct::kDoWhile;
    default: return Construct::kStatement;
  }
}

size_t ChangeSet::UnitCount() const {
  size_t n = 0;
  for (const auto& f : functions) n += f.units.size();
  return n;
}

std::vector<ChangeUnit> ChangeSet::AllUnits() const {
  std::vector<ChangeUnit> out;
  for (const auto& f : functions) out.insert(out.end(), f.units.begin(), f.units.end());
  return out;
}

const FunctionChanges* ChangeSet::Find(const FunctionKey& key) const {
  for (const auto& f : functions) {
    if (f.function == key) return &f;
  }
  return nullptr;
}

namespace {

constexpr syntax::PrintOptions kNoComments{.comments = false};

std::string Text(const Stmt& s) { return syntax::PrintStmt(s, 0, kNoComments); }

std::string WhenBranchesText(const Stmt& s) {
  std::string out;
  for (const auto& b : s.branches) {
    out += "|";
    for (const auto& c : b.conditions) out += syntax::PrintExpr(c) + ",";
  }
  return out;
}

bool SameHeader(const Stmt& a, const Stmt& b) {
  return HeaderFingerprint(a) == HeaderFingerprint(b);
}

bool SameBranchConditions(const Stmt& a, const Stmt& b) {
  return WhenBranchesText(a) == WhenBranchesText(b);
}

// Statements that plausibly play the same role; pairing prefers these.
std::string CoarseKey(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::kVarDecl:
      return "val:" + s.name;
    case StmtKind::kAssign:
      return "set:" + syntax::PrintExpr(s.exprs[0]);
    case StmtKind::kExprStmt:
      if (s.exprs[0].kind == syntax::ExprKind::kCall) {
        return "call:" + syntax::PrintExpr(s.exprs[0].operands[0]);
      }
      return "expr";
    default:
      return std::string(syntax::StmtKindName(s.kind));
  }
}

const Block& EmptyBlock() {
  static const Block kEmpty;
  return kEmpty;
}

std::vector<int> Append(std::vector<int> path, std::initializer_list<int> more) {
  path.insert(path.end(), more);
  return path;
}

// Longest common subsequence over `equal`, returned as matched index pairs.
template <typename Eq>
std::vector<std::pair<int, int>> Lcs(int m, int n, Eq equal) {
  std::vector<std::vector<int>> len(m + 1, std::vector<int>(n + 1, 0));
  for (int i = m - 1; i >= 0; --i) {
    for (int j = n - 1; j >= 0; --j) {
      len[i][j] = equal(i, j) ? len[i + 1][j + 1] + 1
                              : std::max(len[i + 1][j], len[i][j + 1]);
    }
  }
  std::vector<std::pair<int, int>> pairs;
  int i = 0, j = 0;
  while (i < m && j < n) {
    if (equal(i, j) && len[i][j] == len[i + 1][j + 1] + 1) {
      pairs.emplace_back(i++, j++);
    } else if (len[i + 1][j] >= len[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return pairs;
}

class Differ {
 public:
  Differ(FunctionKey function, std::vector<ChangeUnit>& out)
      : function_(std::move(function)), out_(out) {}

  void Slot(const std::vector<Stmt>& before, const std::vector<Stmt>& after,
            const std::vector<int>& bpath, const std::vector<int>& apath) {
    std::vector<std::string> fb, fa;
    for (const auto& s : before) fb.push_back(Fingerprint(s));
    for (const auto& s : after) fa.push_back(Fingerprint(s));
    auto matches = Lcs(static_cast<int>(before.size()), static_cast<int>(after.size()),
                       [&](int i, int j) { return fb[i] == fa[j]; });
    int bi = 0, ai = 0;
    matches.emplace_back(static_cast<int>(before.size()), static_cast<int>(after.size()));
    for (auto [bm, am] : matches) {
      Gap(before, bi, bm, after, ai, am, bpath, apath);
      bi = bm + 1;
      ai = am + 1;
    }
  }

  void Compound(const Stmt& b, const Stmt& a, const std::vector<int>& bloc,
                const std::vector<int>& aloc) {
    bool header_changed = !SameHeader(b, a);
    std::vector<int> sources;
    if (b.kind == StmtKind::kWhen) {
      auto pairs = Lcs(static_cast<int>(b.branches.size()), static_cast<int>(a.branches.size()),
                       [&](int i, int j) {
                         return BranchText(b.branches[i]) == BranchText(a.branches[j]);
                       });
      sources.assign(a.branches.size(), -1);
      for (auto [i, j] : pairs) sources[j] = i;
    }
    bool do_while = b.kind == StmtKind::kDoWhile;
    if (header_changed && !do_while) Header(b, a, bloc, sources);
    if (b.kind == StmtKind::kWhen) {
      for (size_t j = 0; j < a.branches.size(); ++j) {
        if (sources[j] < 0) continue;
        Slot(b.bodies[sources[j]].statements, a.bodies[j].statements,
             Append(bloc, {sources[j]}), Append(aloc, {static_cast<int>(j)}));
      }
    } else {
      size_t slots = std::max(b.bodies.size(), a.bodies.size());
      for (size_t s = 0; s < slots; ++s) {
        const Block& x = s < b.bodies.size() ? b.bodies[s] : EmptyBlock();
        const Block& y = s < a.bodies.size() ? a.bodies[s] : EmptyBlock();
        Slot(x.statements, y.statements, Append(bloc, {static_cast<int>(s)}),
             Append(aloc, {static_cast<int>(s)}));
      }
    }
    if (header_changed && do_while) Header(b, a, bloc, sources);
  }

 private:
  static std::string BranchText(const syntax::WhenBranch& br) {
    std::string out;
    for (const auto& c : br.conditions) out += syntax::PrintExpr(c) + ",";
    return out;
  }

  ChangeUnit NewUnit(ChangeKind kind, Construct construct) {
    ChangeUnit u;
    u.kind = kind;
    u.construct = construct;
    u.function = function_;
    return u;
  }

  void Header(const Stmt& b, const Stmt& a, const std::vector<int>& bloc,
              const std::vector<int>& sources) {
    ChangeUnit u = NewUnit(ChangeKind::kHeaderModification, ConstructOf(b.kind));
    u.op = EditOp::kHeader;
    u.location = bloc;
    u.anchor = bloc;
    if (b.kind == StmtKind::kWhen && !SameBranchConditions(b, a)) {
      // The branch list is part of the header; the fragments show the
      // whole construct.
      Stmt rewritten = b;
      rewritten.exprs = a.exprs;
      rewritten.branches = a.branches;
      rewritten.bodies.clear();
      for (size_t j = 0; j < a.branches.size(); ++j) {
        rewritten.bodies.push_back(sources[j] >= 0 ? b.bodies[sources[j]] : a.bodies[j]);
      }
      u.before_text = Text(b);
      u.after_text = Text(rewritten);
    } else {
      u.before_text = syntax::PrintHeader(b);
      u.after_text = syntax::PrintHeader(a);
    }
    u.statement = a;
    u.branch_sources = sources;
    u.expected = HeaderFingerprint(b);
    out_.push_back(std::move(u));
  }

  // Aligns an unmatched stretch: before[bs, be) against after[as, ae).
  void Gap(const std::vector<Stmt>& before, int bs, int be, const std::vector<Stmt>& after,
           int as, int ae, const std::vector<int>& bpath, const std::vector<int>& apath) {
    int m = be - bs, n = ae - as;
    if (m == 0 && n == 0) return;
    constexpr int kNoPair = -1;
    auto pair_score = [&](int i, int j) {
      const Stmt& x = before[bs + i];
      const Stmt& y = after[as + j];
      bool cx = syntax::IsCompound(x.kind), cy = syntax::IsCompound(y.kind);
      if (cx || cy) return x.kind == y.kind ? 2 : kNoPair;
      return CoarseKey(x) == CoarseKey(y) ? 2 : 1;
    };
    std::vector<std::vector<int>> best(m + 1, std::vector<int>(n + 1, 0));
    for (int i = m - 1; i >= 0; --i) {
      for (int j = n - 1; j >= 0; --j) {
        int v = std::max(best[i + 1][j], best[i][j + 1]);
        int p = pair_score(i, j);
        if (p != kNoPair) v = std::max(v, p + best[i + 1][j + 1]);
        best[i][j] = v;
      }
    }
    int i = 0, j = 0;
    int last_gap = -1, ordinal = 0;
    auto insert = [&](int jj) {
      const Stmt& y = after[as + jj];
      int gap = bs + i;
      ordinal = gap == last_gap ? ordinal + 1 : 0;
      last_gap = gap;
      bool compound = syntax::IsCompound(y.kind);
      ChangeUnit u = NewUnit(compound ? ChangeKind::kAddConstruct
                                      : ChangeKind::kBodyStatementModification,
                             ConstructOf(y.kind));
      u.op = EditOp::kInsert;
      u.location = Append(bpath, {gap});
      u.anchor = compound ? Append(apath, {as + jj}) : u.location;
      u.ordinal = ordinal;
      u.after_text = Text(y);
      u.statement = y;
      out_.push_back(std::move(u));
    };
    auto remove = [&](int ii) {
      const Stmt& x = before[bs + ii];
      bool compound = syntax::IsCompound(x.kind);
      ChangeUnit u = NewUnit(compound ? ChangeKind::kDeleteConstruct
                                      : ChangeKind::kBodyStatementModification,
                             ConstructOf(x.kind));
      u.op = EditOp::kDelete;
      u.location = Append(bpath, {bs + ii});
      u.anchor = u.location;
      u.before_text = Text(x);
      u.expected = Fingerprint(x);
      out_.push_back(std::move(u));
    };
    while (i < m || j < n) {
      if (i < m && j < n) {
        int p = pair_score(i, j);
        if (p != kNoPair && best[i][j] == p + best[i + 1][j + 1]) {
          const Stmt& x = before[bs + i];
          const Stmt& y = after[as + j];
          if (syntax::IsCompound(x.kind)) {
            Compound(x, y, Append(bpath, {bs + i}), Append(apath, {as + j}));
          } else {
            ChangeUnit u = NewUnit(ChangeKind::kBodyStatementModification, Construct::kStatement);
            u.op = EditOp::kReplace;
            u.location = Append(bpath, {bs + i});
            u.anchor = u.location;
            u.before_text = Text(x);
            u.after_text = Text(y);
            u.statement = y;
            u.expected = Fingerprint(x);
            out_.push_back(std::move(u));
          }
          ++i;
          ++j;
          continue;
        }
        if (best[i][j] == best[i + 1][j]) {
          remove(i++);
        } else {
          insert(j++);
        }
      } else if (i < m) {
        remove(i++);
      } else {
        insert(j++);
      }
    }
  }

  FunctionKey function_;
  std::vector<ChangeUnit>& out_;
};

std::string SignatureFingerprint(const FunctionDecl& fn) {
  return syntax::PrintSignature(fn);
}

bool IsTopLevel(const FunctionKey& key) {
  return key.name == syntax::kTopLevelName && key.arity == 0;
}

// --- application ------------------------------------------------------------

void ApplyHeader(Stmt& target, const ChangeUnit& u) {
  const Stmt& src = *u.statement;
  switch (target.kind) {
    case StmtKind::kFor:
      target.name = src.name;
      target.exprs = src.exprs;
      break;
    case StmtKind::kWhen: {
      target.exprs = src.exprs;
      std::vector<Block> old = std::move(target.bodies);
      target.bodies.clear();
      for (size_t k = 0; k < src.branches.size(); ++k) {
        int from = k < u.branch_sources.size() ? u.branch_sources[k] : -1;
        target.bodies.push_back(from >= 0 && from < static_cast<int>(old.size())
                                    ? std::move(old[from])
                                    : src.bodies[k]);
      }
      target.branches = src.branches;
      break;
    }
    default:
      target.exprs = src.exprs;
      break;
  }
}

int SlotCount(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::kIf: return 2;
    case StmtKind::kWhen: return static_cast<int>(s.bodies.size());
    default: return syntax::IsCompound(s.kind) ? 1 : 0;
  }
}

void ApplySlot(std::vector<Stmt>& stmts, const std::vector<const ChangeUnit*>& units,
               size_t depth) {
  const int size = static_cast<int>(stmts.size());
  std::map<int, std::vector<const ChangeUnit*>> inserts;
  std::map<int, const ChangeUnit*> replaces;
  std::map<int, const ChangeUnit*> headers;
  std::map<std::pair<int, int>, std::vector<const ChangeUnit*>> nested;

  for (const ChangeUnit* u : units) {
    const auto& loc = u->location;
    int idx = loc[depth];
    if (loc.size() == depth + 1) {
      if (u->op == EditOp::kInsert) {
        if (idx < 0 || idx > size) throw StaleUnitError(*u, "insertion gap out of range");
        inserts[idx].push_back(u);
        continue;
      }
      if (idx < 0 || idx >= size) throw StaleUnitError(*u, "statement index out of range");
      if (u->op == EditOp::kHeader) {
        if (!syntax::IsCompound(stmts[idx].kind) || HeaderFingerprint(stmts[idx]) != u->expected) {
          throw StaleUnitError(*u, "header does not match");
        }
        if (!headers.emplace(idx, u).second) throw StaleUnitError(*u, "conflicting header edits");
      } else {
        if (Fingerprint(stmts[idx]) != u->expected) {
          throw StaleUnitError(*u, "statement does not match");
        }
        if (!replaces.emplace(idx, u).second) throw StaleUnitError(*u, "conflicting edits");
      }
      continue;
    }
    int slot = loc[depth + 1];
    if (idx < 0 || idx >= size || slot < 0 || slot >= SlotCount(stmts[idx])) {
      throw StaleUnitError(*u, "nested location does not resolve");
    }
    nested[{idx, slot}].push_back(u);
  }
  for (const auto& [idx, u] : replaces) {
    if (headers.count(idx) || nested.lower_bound({idx, 0}) != nested.upper_bound({idx, 1 << 30})) {
      throw StaleUnitError(*u, "conflicting edits");
    }
  }

  for (auto& [key, list] : nested) {
    Stmt& owner = stmts[key.first];
    while (static_cast<int>(owner.bodies.size()) <= key.second) owner.bodies.emplace_back();
    ApplySlot(owner.bodies[key.second].statements, list, depth + 2);
    if (owner.kind == StmtKind::kIf && owner.bodies.size() == 2 &&
        owner.bodies[1].statements.empty() && owner.bodies[1].dangling.empty()) {
      owner.bodies.pop_back();
    }
  }
  for (const auto& [idx, u] : headers) ApplyHeader(stmts[idx], *u);

  for (auto& [gap, list] : inserts) {
    std::stable_sort(list.begin(), list.end(),
                     [](const ChangeUnit* a, const ChangeUnit* b) { return a->ordinal < b->ordinal; });
  }
  std::vector<Stmt> rebuilt;
  for (int i = 0; i <= size; ++i) {
    if (auto it = inserts.find(i); it != inserts.end()) {
      for (const ChangeUnit* u : it->second) rebuilt.push_back(*u->statement);
    }
    if (i == size) break;
    if (auto it = replaces.find(i); it != replaces.end()) {
      if (it->second->op == EditOp::kReplace) rebuilt.push_back(*it->second->statement);
      continue;
    }
    rebuilt.push_back(std::move(stmts[i]));
  }
  stmts = std::move(rebuilt);
}

}  // namespace

std::string Fingerprint(const Stmt& stmt) {
  return std::string(syntax::StmtKindName(stmt.kind)) + "\n" + Text(stmt);
}

std::string Fingerprint(const FunctionDecl& fn) {
  FunctionDecl braced = fn;
  braced.expression_body = false;
  return syntax::PrintFunction(braced, 0, kNoComments);
}

std::string HeaderFingerprint(const Stmt& stmt) {
  std::string out = syntax::PrintHeader(stmt);
  if (stmt.kind == StmtKind::kWhen) out += WhenBranchesText(stmt);
  return out;
}

FunctionDecl TopLevelFunction(const SourceModule& module) {
  FunctionDecl fn;
  fn.name = std::string(syntax::kTopLevelName);
  fn.body.statements = module.top_level;
  return fn;
}

StaleUnitError::StaleUnitError(const ChangeUnit& unit, const std::string& why)
    : std::runtime_error("stale change unit in " + unit.function.ToString() + " at " +
                         ToJson(unit)["anchor"].dump() + ": " + why),
      anchor_(unit.anchor) {}

std::vector<FunctionPair> AlignFunctions(const SourceModule& before, const SourceModule& after) {
  std::vector<FunctionPair> pairs;
  std::vector<bool> used(before.functions.size(), false);
  for (const auto& a : after.functions) {
    FunctionPair p;
    p.after = &a;
    for (size_t i = 0; i < before.functions.size(); ++i) {
      if (!used[i] && syntax::KeyOf(before.functions[i]) == syntax::KeyOf(a)) {
        used[i] = true;
        p.before = &before.functions[i];
        break;
      }
    }
    pairs.push_back(p);
  }
  for (size_t i = 0; i < before.functions.size(); ++i) {
    if (!used[i]) pairs.push_back({&before.functions[i], nullptr});
  }
  return pairs;
}

std::vector<ChangeUnit> DiffFunction(const FunctionDecl* before, const FunctionDecl* after,
                                     int before_index) {
  std::vector<ChangeUnit> out;
  if (!before && !after) return out;
  FunctionKey key = syntax::KeyOf(after ? *after : *before);
  if (!before) {
    ChangeUnit u;
    u.kind = ChangeKind::kAddConstruct;
    u.construct = Construct::kFunctionDecl;
    u.function = key;
    u.op = EditOp::kInsert;
    u.function_index = before_index;
    u.after_text = syntax::PrintFunction(*after, 0, kNoComments);
    u.function_decl = *after;
    out.push_back(std::move(u));
    return out;
  }
  if (!after) {
    ChangeUnit u;
    u.kind = ChangeKind::kDeleteConstruct;
    u.construct = Construct::kFunctionDecl;
    u.function = key;
    u.op = EditOp::kDelete;
    u.function_index = before_index;
    u.before_text = syntax::PrintFunction(*before, 0, kNoComments);
    u.expected = Fingerprint(*before);
    out.push_back(std::move(u));
    return out;
  }
  if (SignatureFingerprint(*before) != SignatureFingerprint(*after)) {
    ChangeUnit u;
    u.kind = ChangeKind::kHeaderModification;
    u.construct = Construct::kFunctionDecl;
    u.function = key;
    u.op = EditOp::kHeader;
    u.before_text = syntax::PrintSignature(*before);
    u.after_text = syntax::PrintSignature(*after);
    FunctionDecl signature = *after;
    signature.body = {};
    u.function_decl = std::move(signature);
    u.expected = SignatureFingerprint(*before);
    out.push_back(std::move(u));
  }
  Differ(key, out).Slot(before->body.statements, after->body.statements, {}, {});
  return out;
}

ChangeSet DiffModules(const SourceModule& before, const SourceModule& after) {
  ChangeSet cs;
  auto add = [&](std::vector<ChangeUnit> units) {
    if (units.empty()) return;
    FunctionKey key = units.front().function;
    cs.functions.push_back({std::move(key), std::move(units)});
  };
  if (!before.top_level.empty() || !after.top_level.empty()) {
    FunctionDecl b = TopLevelFunction(before), a = TopLevelFunction(after);
    add(DiffFunction(&b, &a));
  }
  auto index_of = [&](const FunctionDecl* fn) {
    return static_cast<int>(fn - before.functions.data());
  };
  int last_matched = -1;
  for (const auto& p : AlignFunctions(before, after)) {
    if (p.before && p.after) {
      last_matched = std::max(last_matched, index_of(p.before));
      add(DiffFunction(p.before, p.after, index_of(p.before)));
    } else if (p.after) {
      add(DiffFunction(nullptr, p.after, last_matched + 1));
    } else {
      add(DiffFunction(p.before, nullptr, index_of(p.before)));
    }
  }
  // Number inserts sharing a function gap in `after` order.
  std::map<int, int> per_gap;
  for (auto& f : cs.functions) {
    for (auto& u : f.units) {
      if (u.construct == Construct::kFunctionDecl && u.op == EditOp::kInsert) {
        u.ordinal = per_gap[u.function_index]++;
      }
    }
  }
  return cs;
}

SourceModule ApplyUnits(const SourceModule& before, std::span<const ChangeUnit> units) {
  SourceModule result = before;
  std::map<FunctionKey, std::vector<const ChangeUnit*>> bodies;
  std::vector<const ChangeUnit*> fn_inserts;
  std::map<int, const ChangeUnit*> fn_deletes;
  for (const auto& u : units) {
    bool function_level = u.construct == Construct::kFunctionDecl && u.location.empty();
    if (function_level && u.op == EditOp::kInsert) {
      if (u.function_index < 0 || u.function_index > static_cast<int>(before.functions.size())) {
        throw StaleUnitError(u, "function gap out of range");
      }
      fn_inserts.push_back(&u);
    } else if (function_level && u.op == EditOp::kDelete) {
      if (u.function_index < 0 || u.function_index >= static_cast<int>(before.functions.size()) ||
          Fingerprint(before.functions[u.function_index]) != u.expected) {
        throw StaleUnitError(u, "function does not match");
      }
      fn_deletes[u.function_index] = &u;
    } else {
      bodies[u.function].push_back(&u);
    }
  }

  for (const auto& [key, list] : bodies) {
    std::vector<Stmt>* stmts = nullptr;
    FunctionDecl* fn = nullptr;
    if (IsTopLevel(key)) {
      stmts = &result.top_level;
    } else {
      fn = syntax::FindFunction(result, key);
      if (!fn) throw StaleUnitError(*list.front(), "function not found");
      stmts = &fn->body.statements;
    }
    std::vector<const ChangeUnit*> statement_units;
    for (const ChangeUnit* u : list) {
      if (u->location.empty()) {
        if (!fn || u->op != EditOp::kHeader || SignatureFingerprint(*fn) != u->expected) {
          throw StaleUnitError(*u, "signature does not match");
        }
        fn->params = u->function_decl->params;
        fn->return_type = u->function_decl->return_type;
      } else {
        statement_units.push_back(u);
      }
    }
    if (!statement_units.empty()) ApplySlot(*stmts, statement_units, 0);
    if (fn && fn->expression_body &&
        !(fn->body.statements.size() == 1 && fn->body.statements[0].kind == StmtKind::kReturn &&
          !fn->body.statements[0].exprs.empty())) {
      fn->expression_body = false;
      fn->body.braced = true;
    }
  }

  if (!fn_inserts.empty() || !fn_deletes.empty()) {
    std::stable_sort(fn_inserts.begin(), fn_inserts.end(),
                     [](const ChangeUnit* a, const ChangeUnit* b) {
                       return std::tie(a->function_index, a->ordinal) <
                              std::tie(b->function_index, b->ordinal);
                     });
    std::vector<FunctionDecl> rebuilt;
    size_t next_insert = 0;
    const int size = static_cast<int>(result.functions.size());
    for (int i = 0; i <= size; ++i) {
      while (next_insert < fn_inserts.size() && fn_inserts[next_insert]->function_index == i) {
        rebuilt.push_back(*fn_inserts[next_insert++]->function_decl);
      }
      if (i == size) break;
      if (fn_deletes.count(i)) continue;
      rebuilt.push_back(std::move(result.functions[i]));
    }
    result.functions = std::move(rebuilt);
  }
  return result;
}

nlohmann::json ToJson(const ChangeUnit& unit) {
  nlohmann::json j;
  j["kind"] = ChangeKindName(unit.kind);
  j["anchor"] = unit.anchor;
  j["construct"] = ConstructName(unit.construct);
  j["before"] = unit.before_text ? nlohmann::json(*unit.before_text) : nlohmann::json(nullptr);
  j["after"] = unit.after_text ? nlohmann::json(*unit.after_text) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json ToJson(const ChangeSet& changes) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : changes.functions) {
    nlohmann::json units = nlohmann::json::array();
    for (const auto& u : f.units) units.push_back(ToJson(u));
    out.push_back({{"function", f.function.ToString()}, {"units", std::move(units)}});
  }
  return out;
}

}  // namespace stepwise::diff
