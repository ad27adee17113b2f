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

// Random teaching-subset programs and edit scripts for property tests.

#ifndef STEPWISE_TESTS_SUPPORT_PROGRAM_GEN_H_
#define STEPWISE_TESTS_SUPPORT_PROGRAM_GEN_H_

#include <random>
#include <string>
#include <vector>

#include "stepwise/syntax/ast.h"

namespace stepwise::testing {

class ProgramGenerator {
 public:
  explicit ProgramGenerator(unsigned seed, bool comments = true)
      : rng_(seed), comments_(comments) {}

  syntax::SourceModule Module() {
    syntax::SourceModule m;
    int top = Pick(0, 2) == 0 ? Pick(1, 3) : 0;
    for (int i = 0; i < top; ++i) m.top_level.push_back(Statement(1));
    int fns = Pick(top == 0 ? 1 : 0, 3);
    for (int i = 0; i < fns; ++i) {
      syntax::FunctionDecl fn = Function();
      fn.name = "f" + std::to_string(i);
      m.functions.push_back(std::move(fn));
    }
    if (comments_ && Chance(8)) m.dangling.push_back(LineComment());
    return m;
  }

  // Applies 1..max_edits random structural edits: statement insertions,
  // deletions and replacements at any depth, header changes, else-branch
  // toggles, and function additions, deletions and signature changes.
  syntax::SourceModule Mutate(syntax::SourceModule m, int max_edits = 4) {
    int edits = Pick(1, max_edits);
    for (int e = 0; e < edits; ++e) MutateOnce(m);
    return m;
  }

  void MutateOnce(syntax::SourceModule& m) {
    int pick = Pick(0, 19);
    if (pick == 0) {
      syntax::FunctionDecl fn = Function();
      fn.name = "g" + std::to_string(Pick(0, 9));
      for (const auto& other : m.functions) {
        if (other.name == fn.name) return;
      }
      auto at = m.functions.begin() + Pick(0, static_cast<int>(m.functions.size()));
      m.functions.insert(at, std::move(fn));
      return;
    }
    if (pick == 1 && !m.functions.empty()) {
      m.functions.erase(m.functions.begin() + Pick(0, static_cast<int>(m.functions.size()) - 1));
      return;
    }
    if (pick == 2 && !m.functions.empty()) {
      auto& fn = m.functions[Pick(0, static_cast<int>(m.functions.size()) - 1)];
      if (Chance(2)) {
        fn.return_type = Choose<std::string>({"", "Int", "Boolean", "Long"});
      } else if (!fn.params.empty()) {
        fn.params[0].type_name = Choose<std::string>({"Int", "String", "Char"});
      }
      return;
    }
    std::vector<syntax::Block*> blocks;
    std::vector<syntax::Stmt*> compounds;
    for (auto& fn : m.functions) Collect(fn.body, blocks, compounds);
    for (auto& s : m.top_level) Collect(s, blocks, compounds);
    if (pick < 7 && !compounds.empty()) {
      MutateHeader(*compounds[Pick(0, static_cast<int>(compounds.size()) - 1)]);
      return;
    }
    if (blocks.empty()) return;
    auto& stmts = blocks[Pick(0, static_cast<int>(blocks.size()) - 1)]->statements;
    int n = static_cast<int>(stmts.size());
    int op = Pick(0, 2);
    if (n == 0 || op == 0) {
      stmts.insert(stmts.begin() + Pick(0, n), Statement(Pick(1, 3)));
    } else if (op == 1) {
      stmts.erase(stmts.begin() + Pick(0, n - 1));
    } else {
      stmts[Pick(0, n - 1)] = Statement(Pick(1, 3));
    }
  }

  void MutateHeader(syntax::Stmt& s) {
    using syntax::StmtKind;
    switch (s.kind) {
      case StmtKind::kIf:
        if (Chance(3)) {
          if (s.bodies.size() == 2) {
            s.bodies.pop_back();
          } else {
            s.bodies.push_back(Body(1, Pick(1, 2)));
          }
        } else {
          s.exprs[0] = Condition();
        }
        break;
      case StmtKind::kWhen: {
        bool subject = !s.exprs.empty();
        int k = Pick(0, static_cast<int>(s.branches.size()) - 1);
        if (s.branches[k].conditions.empty()) break;
        if (Chance(3)) {
          syntax::WhenBranch br;
          br.conditions.push_back(subject ? IntLit() : Condition());
          s.branches.insert(s.branches.begin() + k, std::move(br));
          s.bodies.insert(s.bodies.begin() + k, Body(1, 1));
        } else if (Chance(3) && s.branches.size() > 1) {
          s.branches.erase(s.branches.begin() + k);
          s.bodies.erase(s.bodies.begin() + k);
        } else {
          s.branches[k].conditions[0] = subject ? IntLit() : Condition();
        }
        break;
      }
      case StmtKind::kFor:
        if (Chance(2)) {
          s.name = Choose<std::string>({"i", "c", "k", "j"});
        } else {
          s.exprs[0] = RangeExpr();
        }
        break;
      default:
        s.exprs[0] = Condition();
        break;
    }
  }

  syntax::FunctionDecl Function() {
    syntax::FunctionDecl fn;
    fn.name = "f";
    int params = Pick(0, 2);
    for (int i = 0; i < params; ++i) {
      fn.params.push_back({std::string(1, static_cast<char>('p' + i)),
                           Choose<std::string>({"Int", "String", "Boolean"})});
    }
    if (Chance(2)) fn.return_type = Choose<std::string>({"Int", "Boolean", "String", "Unit"});
    fn.body = Body(0, Pick(0, 5));
    if (comments_ && Chance(6)) fn.leading.push_back(LineComment());
    return fn;
  }

  syntax::Block Body(int depth, int count) {
    syntax::Block b;
    for (int i = 0; i < count; ++i) b.statements.push_back(Statement(depth + 1));
    if (comments_ && Chance(10)) b.dangling.push_back(LineComment());
    return b;
  }

  syntax::Stmt Statement(int depth) {
    using syntax::StmtKind;
    syntax::Stmt s;
    bool compound_ok = depth < 3;
    int pick = Pick(0, compound_ok ? 11 : 6);
    switch (pick) {
      case 0:
      case 1:
        s.kind = StmtKind::kVarDecl;
        s.is_var = Chance(2);
        s.name = Choose<std::string>({"a", "b", "count", "total", "word"});
        if (Chance(3)) s.type_name = Choose<std::string>({"Int", "String"});
        if (!Chance(6)) s.exprs.push_back(Expression(2));
        break;
      case 2:
        s.kind = StmtKind::kAssign;
        s.exprs.push_back(Target());
        if (Chance(4)) {
          s.op = Choose<std::string>({"++", "--"});
        } else {
          s.op = Choose<std::string>({"=", "+=", "-=", "*=", "/=", "%="});
          s.exprs.push_back(Expression(2));
        }
        break;
      case 3:
      case 4:
        s.kind = StmtKind::kExprStmt;
        s.exprs.push_back(syntax::MakeCall(Choose<std::string>({"println", "print", "check"}),
                                           {Expression(2)}));
        break;
      case 5:
        s.kind = StmtKind::kReturn;
        if (Chance(2)) s.exprs.push_back(Expression(2));
        break;
      case 6:
        s.kind = Chance(2) ? StmtKind::kBreak : StmtKind::kContinue;
        break;
      case 7:
        s.kind = StmtKind::kIf;
        s.exprs.push_back(Condition());
        s.bodies.push_back(Body(depth, Pick(0, 3)));
        if (Chance(2)) {
          if (Chance(3)) {
            syntax::Block chain;
            chain.braced = false;
            syntax::Stmt nested;
            nested.kind = StmtKind::kIf;
            nested.exprs.push_back(Condition());
            nested.bodies.push_back(Body(depth + 1, Pick(1, 2)));
            chain.statements.push_back(std::move(nested));
            s.bodies.push_back(std::move(chain));
          } else {
            s.bodies.push_back(Body(depth, Pick(1, 3)));
          }
        }
        break;
      case 8: {
        s.kind = StmtKind::kWhen;
        bool subject = Pick(0, 2) != 0;
        if (subject) s.exprs.push_back(syntax::MakeName(Choose<std::string>({"x", "n"})));
        int branches = Pick(1, 3);
        for (int i = 0; i < branches; ++i) {
          syntax::WhenBranch br;
          if (subject) {
            br.conditions.push_back(Chance(3) ? syntax::MakeUnary("in", RangeExpr())
                                              : IntLit());
            if (Chance(4)) br.conditions.push_back(IntLit());
          } else {
            br.conditions.push_back(Condition());
          }
          s.branches.push_back(std::move(br));
          s.bodies.push_back(Body(depth, Pick(1, 2)));
        }
        if (Chance(2)) {
          s.branches.push_back({});
          s.bodies.push_back(Body(depth, 1));
        }
        break;
      }
      case 9:
        s.kind = StmtKind::kFor;
        s.name = Choose<std::string>({"i", "c", "k"});
        s.exprs.push_back(Chance(3) ? syntax::MakeName("word") : RangeExpr());
        s.bodies.push_back(Body(depth, Pick(0, 3)));
        break;
      case 10:
        s.kind = StmtKind::kWhile;
        s.exprs.push_back(Condition());
        s.bodies.push_back(Body(depth, Pick(0, 3)));
        break;
      default:
        s.kind = StmtKind::kDoWhile;
        s.exprs.push_back(Condition());
        s.bodies.push_back(Body(depth, Pick(1, 3)));
        break;
    }
    if (comments_ && Chance(7)) s.leading.push_back(Chance(3) ? BlockComment() : LineComment());
    if (comments_ && Chance(9)) s.trailing = LineComment();
    return s;
  }

  syntax::Expr Expression(int depth) {
    using syntax::ExprKind;
    if (depth <= 0) return Atom();
    switch (Pick(0, 9)) {
      case 0:
      case 1:
        return Atom();
      case 2:
        return syntax::MakeBinary(Choose<std::string>({"+", "-", "*", "/", "%"}),
                                  Expression(depth - 1), Expression(depth - 1));
      case 3:
        return Condition();
      case 4:
        return syntax::MakeUnary(Choose<std::string>({"-", "!", "+"}), Expression(depth - 1));
      case 5: {
        syntax::Expr member;
        member.kind = ExprKind::kMember;
        member.text = Choose<std::string>({"length", "size", "indices"});
        member.operands.push_back(Atom());
        return member;
      }
      case 6: {
        syntax::Expr call;
        call.kind = ExprKind::kCall;
        syntax::Expr callee;
        callee.kind = ExprKind::kMember;
        callee.text = Choose<std::string>({"toInt", "uppercase", "count"});
        callee.operands.push_back(Atom());
        call.operands.push_back(std::move(callee));
        return call;
      }
      case 7: {
        syntax::Expr index;
        index.kind = ExprKind::kIndex;
        index.operands.push_back(syntax::MakeName("word"));
        index.operands.push_back(Expression(depth - 1));
        return index;
      }
      case 8:
        return RangeExpr();
      default:
        return syntax::MakeCall(Choose<std::string>({"readln", "max", "abs"}),
                                Pick(0, 1) ? std::vector<syntax::Expr>{Expression(depth - 1)}
                                           : std::vector<syntax::Expr>{});
    }
  }

  syntax::Expr Condition() {
    switch (Pick(0, 5)) {
      case 0:
        return syntax::MakeBinary(Choose<std::string>({"<", ">", "<=", ">="}), Atom(), IntLit());
      case 1:
        return syntax::MakeBinary(Choose<std::string>({"==", "!="}), Atom(), Atom());
      case 2:
        return syntax::MakeBinary(Choose<std::string>({"&&", "||"}), Condition(), Condition());
      case 3:
        return syntax::MakeBinary(Choose<std::string>({"in", "!in"}), Atom(), RangeExpr());
      case 4:
        return syntax::MakeUnary("!", syntax::MakeName("done"));
      default:
        return syntax::MakeBool(Chance(2));
    }
  }

  syntax::Expr RangeExpr() {
    if (Chance(3)) {
      return syntax::MakeBinary(Choose<std::string>({"until", "downTo"}), IntLit(),
                                syntax::MakeName("n"));
    }
    syntax::Expr r;
    r.kind = syntax::ExprKind::kRange;
    r.operands.push_back(IntLit());
    r.operands.push_back(Chance(2) ? IntLit() : syntax::MakeName("n"));
    return r;
  }

  syntax::Expr Atom() {
    switch (Pick(0, 3)) {
      case 0:
        return IntLit();
      case 1:
        return syntax::MakeString(Choose<std::string>({"Hello!", "a\tb", "quote\"d", "", "50$"}));
      default:
        return syntax::MakeName(Choose<std::string>({"a", "b", "x", "n", "count", "word"}));
    }
  }

  syntax::Expr IntLit() {
    syntax::Expr e;
    e.kind = syntax::ExprKind::kIntLiteral;
    e.text = std::to_string(Pick(0, 20));
    return e;
  }

  syntax::Expr Target() {
    if (Chance(5)) {
      syntax::Expr index;
      index.kind = syntax::ExprKind::kIndex;
      index.operands.push_back(syntax::MakeName("cells"));
      index.operands.push_back(IntLit());
      return index;
    }
    return syntax::MakeName(Choose<std::string>({"a", "b", "count", "total"}));
  }

  syntax::Comment LineComment() {
    return {syntax::Comment::Style::kLine, "// note " + std::to_string(Pick(0, 99)), {}};
  }
  syntax::Comment BlockComment() {
    return {syntax::Comment::Style::kBlock, "/* remark " + std::to_string(Pick(0, 99)) + " */",
            {}};
  }

  int Pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool Chance(int one_in) { return Pick(1, one_in) == 1; }
  template <typename T>
  T Choose(std::initializer_list<T> options) {
    auto it = options.begin();
    std::advance(it, Pick(0, static_cast<int>(options.size()) - 1));
    return *it;
  }

  std::mt19937& rng() { return rng_; }

 private:
  static void Collect(syntax::Block& b, std::vector<syntax::Block*>& blocks,
                      std::vector<syntax::Stmt*>& compounds) {
    if (b.braced) blocks.push_back(&b);
    for (auto& s : b.statements) Collect(s, blocks, compounds);
  }

  static void Collect(syntax::Stmt& s, std::vector<syntax::Block*>& blocks,
                      std::vector<syntax::Stmt*>& compounds) {
    if (!syntax::IsCompound(s.kind)) return;
    compounds.push_back(&s);
    for (auto& b : s.bodies) Collect(b, blocks, compounds);
  }

  std::mt19937 rng_;
  bool comments_;
};

}  // namespace stepwise::testing

#endif  // STEPWISE_TESTS_SUPPORT_PROGRAM_GEN_H_
