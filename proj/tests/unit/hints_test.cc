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

#include <gtest/gtest.h>

#include <sstream>

#include "stepwise/hints/inspections.h"
#include "stepwise/hints/postprocessor.h"
#include "stepwise/syntax/parser.h"
#include "stepwise/syntax/printer.h"
#include "stepwise/syntax/queries.h"
#include "support/golden_matrix.h"
#include "support/interp.h"
#include "support/program_gen.h"

namespace stepwise::hints {
namespace {

using syntax::FunctionKey;
using syntax::Parse;
using syntax::SourceModule;

CodeHintResult Build(const std::string& student, const std::string& llm,
                     const std::string& model) {
  return BuildCodeHint(student, Parse(student), Parse(llm), Parse(model));
}

// --- scope ------------------------------------------------------------------

TEST(ScopeTest, EmptyStudentAddsEverything) {
  ScopeSet s = ComputeScope(Parse(""), Parse("fun main() {\n    println(1)\n}\n"));
  EXPECT_EQ(s.functions_to_add, (std::set<FunctionKey>{{"main", 0}}));
  EXPECT_TRUE(s.functions_to_change.empty());
}

TEST(ScopeTest, EquivalentFunctionsAreOutOfScope) {
  SourceModule m = Parse("fun main() {\n    println(1)\n}\n");
  EXPECT_TRUE(ComputeScope(m, m).empty());
}

TEST(ScopeTest, ChangedAndMissingFunctions) {
  ScopeSet s = ComputeScope(Parse("fun main() {}\nfun extra() {}\n"),
                            Parse("fun main() {\n    println(1)\n}\n"
                                  "fun helper(a: Int) {}\n"));
  EXPECT_EQ(s.functions_to_add, (std::set<FunctionKey>{{"helper", 1}}));
  EXPECT_EQ(s.functions_to_change, (std::set<FunctionKey>{{"main", 0}}));
}

TEST(FilterTest, DropsOutOfScopeAndKeepsFirstFunction) {
  SourceModule student = Parse(
      "fun getHiddenSecret(n: Int): String {\n    return \"****\"\n}\n"
      "fun a() {}\nfun b() {}\n");
  SourceModule llm = Parse(
      "fun getHiddenSecret(n: Int): String {\n    return \"*\"\n}\n"
      "fun a() {\n    println(1)\n}\nfun b() {\n    println(2)\n}\n");
  ScopeSet scope;
  scope.functions_to_change = {{"a", 0}, {"b", 0}};
  diff::ChangeSet kept = FilterToScope(diff::DiffModules(student, llm), scope);
  ASSERT_EQ(kept.functions.size(), 1u);
  EXPECT_EQ(kept.functions[0].function.ToString(), "a/0");
  scope.functions_to_change.clear();
  EXPECT_TRUE(FilterToScope(diff::DiffModules(student, llm), scope).empty());
}

// --- short functions --------------------------------------------------------

TEST(ShortFunctionTest, ThresholdIsThreeLinesInclusive) {
  SourceModule model = Parse(
      "fun one(a: Int, b: Int): Int {\n    return a + b\n}\n"
      "fun three(a: Int): Int {\n    val b = a\n\n    val c = b\n    return c\n}\n"
      "fun four(a: Int): Int {\n    val b = a\n    val c = b\n    val d = c\n    return d\n}\n");
  EXPECT_TRUE(ShortFunctionSubstitute({"one", 2}, model).has_value());
  EXPECT_TRUE(ShortFunctionSubstitute({"three", 1}, model).has_value());
  EXPECT_FALSE(ShortFunctionSubstitute({"four", 1}, model).has_value());
  EXPECT_THROW(ShortFunctionSubstitute({"missing", 0}, model), std::invalid_argument);
}

TEST(ShortFunctionTest, BuildUsesModelBody) {
  std::string student = "fun main() {\n    println(sum(1, 2))\n}\n";
  std::string model = student + "\nfun sum(a: Int, b: Int): Int {\n    return a + b\n}\n";
  std::string llm = student + "\nfun sum(a: Int, b: Int): Int {\n    val s = a + b\n"
                              "    // add them\n    println(s)\n    return s\n}\n";
  CodeHintResult r = Build(student, llm, model);
  EXPECT_EQ(r.hint.provenance, Provenance::kModelSolutionSubstituted);
  EXPECT_EQ(r.hint.after, model);
  EXPECT_EQ(r.heuristics.front(), Heuristic::kShortFunctionSubstitution);
}

// --- heuristics -------------------------------------------------------------

TEST(ReduceTest, NewFunctionGetsTodoBody) {
  auto units = diff::DiffModules(Parse(""), Parse("fun f(a: Int): Int {\n    return a\n}\n"))
                   .AllUnits();
  ReducedUnit r = ReduceToSingleStep(units);
  EXPECT_EQ(r.heuristic, Heuristic::kAdditiveStatementIsolation);
  EXPECT_EQ(*r.unit.after_text,
            "fun f(a: Int): Int {\n    TODO(\"Implement this function\")\n}");
}

TEST(ReduceTest, ConditionWinsOverBody) {
  auto units = diff::DiffModules(
                   Parse("fun f(x: Int) {\n    if (x > 0) {\n        println(1)\n    }\n}\n"),
                   Parse("fun f(x: Int) {\n    if (x > 1) {\n        println(2)\n    }\n}\n"))
                   .AllUnits();
  ReducedUnit r = ReduceToSingleStep(units);
  EXPECT_EQ(r.heuristic, Heuristic::kIntrinsicStructureModificationFocus);
  EXPECT_EQ(r.unit.kind, diff::ChangeKind::kHeaderModification);
}

TEST(ReduceTest, FirstOfTwoBodyChanges) {
  auto units = diff::DiffModules(
                   Parse("fun f(x: Int) {\n    var y = 0\n    if (x > 0) {\n    }\n}\n"),
                   Parse("fun f(x: Int) {\n    var y = 0\n    if (x > 0) {\n"
                         "        println(x)\n        y = x\n    }\n}\n"))
                   .AllUnits();
  ASSERT_EQ(units.size(), 2u);
  ReducedUnit r = ReduceToSingleStep(units);
  EXPECT_EQ(r.heuristic, Heuristic::kInternalBodyChangeDetection);
  EXPECT_EQ(*r.unit.after_text, "println(x)");
}

TEST(ReduceTest, EmptyInputThrows) {
  EXPECT_THROW(ReduceToSingleStep({}), std::invalid_argument);
}

TEST(GoldenMatrixTest, AllCasesMatchBitExactly) {
  for (const auto& c : testing::GoldenMatrix()) {
    SCOPED_TRACE(c.name);
    CodeHintResult r = Build(c.student, c.llm, c.model);
    EXPECT_EQ(r.hint.after, c.after);
    EXPECT_EQ(r.hint.provenance, Provenance::kLlmGenerated);
    ASSERT_FALSE(r.heuristics.empty());
    EXPECT_EQ(HeuristicName(r.heuristics.back()), c.heuristic);
    const auto& diff = r.hint.diff;
    ASSERT_EQ(diff.size(), 1u);
    ASSERT_EQ(diff[0]["units"].size(), 1u);
    const auto& u = diff[0]["units"][0];
    EXPECT_EQ(u["kind"], c.kind);
    EXPECT_EQ(u["construct"], c.unit_construct);
    if (c.unit_before.empty()) {
      EXPECT_TRUE(u["before"].is_null());
    } else {
      EXPECT_EQ(u["before"], c.unit_before);
    }
    EXPECT_EQ(u["after"], c.unit_after);
  }
}

// --- inspections ------------------------------------------------------------

std::string Rewrite(const std::string& expr) {
  syntax::Expr e = syntax::ParseExpression(expr);
  ApplyInspections(e);
  return syntax::PrintExpr(e);
}

TEST(InspectionTest, Examples) {
  EXPECT_EQ(Rewrite("month >= 1 && month <= 12"), "month in 1..12");
  EXPECT_EQ(Rewrite("1 <= month && 12 >= month"), "month in 1..12");
  EXPECT_EQ(Rewrite("done == true"), "done");
  EXPECT_EQ(Rewrite("done == false"), "!done");
  EXPECT_EQ(Rewrite("!(a == b)"), "a != b");
  EXPECT_EQ(Rewrite("(a > b) == false"), "!(a > b)");
  EXPECT_EQ(Rewrite("x > 0 && y < 3"), "x > 0 && y < 3");
}

TEST(InspectionTest, StatementRules) {
  SourceModule m = Parse(
      "fun f(c: Boolean): Boolean {\n    if (c) return true else return false\n}\n"
      "fun g(x: Int) {\n    if (x > 0) {\n        println(x)\n    } else {\n    }\n}\n");
  std::vector<std::string> fired;
  SourceModule r = ApplyInspections(m, &fired);
  EXPECT_EQ(syntax::Print(r),
            "fun f(c: Boolean): Boolean {\n    return c\n}\n\n"
            "fun g(x: Int) {\n    if (x > 0) {\n        println(x)\n    }\n}\n");
  EXPECT_EQ(fired, (std::vector<std::string>{"IfReturnBoolean", "EmptyElse"}));
}

TEST(InspectionTest, IdiomaticCodeIsFixedPoint) {
  SourceModule m = Parse("fun f(m: Int): Boolean {\n    return m in 1..12 && !done\n}\n");
  std::vector<std::string> fired;
  SourceModule r = ApplyInspections(m, &fired);
  EXPECT_TRUE(fired.empty());
  EXPECT_TRUE(syntax::Equivalent(r, m));
}

// Every expression-level rule checked against the evaluator over all boolean
// assignments and an integer grid covering [-100, 100].
TEST(InspectionTest, BooleanRulesPreserveSemantics) {
  const std::vector<std::string> exprs = {
      "m >= lo && m <= hi",  "lo <= m && m <= hi",   "m <= hi && m >= lo",
      "hi >= m && lo <= m",  "p == true",            "true == p",
      "p == false",          "(m > lo) == false",    "!(m == lo)",
      "!(p == q)",           "(m >= 1 && m <= 12) == true",
  };
  std::vector<long long> grid;
  for (long long v = -100; v <= 100; v += 7) grid.push_back(v);
  grid.insert(grid.end(), {-1, 0, 1, 12, 13, 100});
  for (const auto& text : exprs) {
    syntax::Expr before = syntax::ParseExpression(text);
    syntax::Expr after = before;
    ASSERT_FALSE(ApplyInspections(after).empty()) << text;
    int checked = 0;
    for (bool p : {false, true}) {
      for (bool q : {false, true}) {
        for (long long m : grid) {
          for (long long lo : {-100LL, -5LL, 0LL, 1LL, 50LL}) {
            for (long long hi : {-50LL, 0LL, 12LL, 100LL}) {
              testing::Env env{{"p", p}, {"q", q}, {"m", m}, {"lo", lo}, {"hi", hi}};
              ASSERT_EQ(testing::Eval(before, env), testing::Eval(after, env))
                  << text << " -> " << syntax::PrintExpr(after);
              ++checked;
            }
          }
        }
      }
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(InspectionTest, IfReturnRuleTruthTable) {
  for (const char* cond : {"c", "x > 3", "x in 1..12"}) {
    std::string src = std::string("fun f() {\n    if (") + cond +
                      ") return true else return false\n}\n";
    SourceModule m = Parse(src);
    SourceModule r = ApplyInspections(m);
    for (bool c : {false, true}) {
      for (long long x : {-100LL, 0LL, 1LL, 3LL, 4LL, 12LL, 13LL, 100LL}) {
        testing::Env env{{"c", c}, {"x", x}};
        EXPECT_EQ(testing::Exec(m.functions[0].body, env), testing::Exec(r.functions[0].body, env))
            << cond;
      }
    }
  }
}

// --- build_code_hint --------------------------------------------------------

const char* kMastermindModel =
    "fun getHiddenSecret(wordLength: Int): String {\n"
    "    var result = \"\"\n"
    "    for (i in 0 until wordLength) {\n"
    "        result += \"*\"\n"
    "    }\n"
    "    return result\n"
    "}\n"
    "\n"
    "fun main() {\n"
    "    val secret = \"ABCD\"\n"
    "    println(getHiddenSecret(secret.length))\n"
    "    val guess = readln()\n"
    "    println(guess)\n"
    "}\n";

TEST(BuildTest, OutOfScopeEditsAreIgnored) {
  std::string student =
      "fun getHiddenSecret(wordLength: Int): String {\n"
      "    var result = \"\"\n"
      "    for (i in 0 until wordLength) {\n"
      "        result += \"*\"\n"
      "    }\n"
      "    return result\n"
      "}\n"
      "\n"
      "fun main() {\n"
      "    val secret = \"ABCD\"\n"
      "}\n";
  std::string llm =
      "fun getHiddenSecret(wordLength: Int): String {\n"
      "    return \"*\".repeat(wordLength)\n"
      "}\n"
      "\n"
      "fun main() {\n"
      "    val secret = \"ABCD\"\n"
      "    println(getHiddenSecret(secret.length))\n"
      "}\n";
  CodeHintResult r = Build(student, llm, kMastermindModel);
  EXPECT_EQ(r.hint.target_function.ToString(), "main/0");
  ASSERT_EQ(r.hint.diff.size(), 1u);
  EXPECT_EQ(r.hint.diff[0]["function"], "main/0");
  EXPECT_EQ(r.hint.after.substr(0, 140), student.substr(0, 140));
}

TEST(BuildTest, FullSolutionIsCutToOneStep) {
  std::string student = "fun main() {\n}\n";
  std::string model =
      "fun main() {\n"
      "    val month = readln().toInt()\n"
      "    if (month >= 1 && month <= 12) {\n"
      "        println(\"Valid\")\n"
      "    } else {\n"
      "        println(\"Invalid\")\n"
      "    }\n"
      "}\n";
  CodeHintResult r = Build(student, model, model);
  EXPECT_EQ(diff::DiffModules(Parse(student), Parse(r.hint.after)).UnitCount(), 1u);
  EXPECT_EQ(r.hint.after, "fun main() {\n    val month = readln().toInt()\n}\n");
}

TEST(BuildTest, CommentsAreRemovedFromTheChange) {
  std::string student = "fun main() {\n    val a = 1\n}\n";
  std::string llm =
      "fun main() {\n    val a = 1\n    // Step 3: check the range\n"
      "    if (a >= 1 && a <= 12) { /* inside */\n        println(a) // print it\n    }\n}\n";
  std::string model = llm + "fun pad() {\n    val x = 1\n}\n";
  CodeHintResult r = Build(student, llm, model);
  EXPECT_EQ(r.hint.after,
            "fun main() {\n    val a = 1\n    if (a in 1..12) {\n"
            "        TODO(\"Implement this function\")\n    }\n}\n");
  EXPECT_EQ(r.inspections_fired, std::vector<std::string>{"ComparisonChainToRange"});
  EXPECT_EQ(syntax::CountComments(Parse(r.hint.after)), 0);
}

TEST(BuildTest, NothingNewIsNoActionableChange) {
  std::string student = "fun main() {\n    val a = 1\n}\n";
  std::string model = "fun main() {\n    val a = 2\n}\n";
  EXPECT_THROW(Build(student, student, model), NoActionableChange);
  EXPECT_THROW(Build(model, student, model), NoActionableChange);
}

TEST(BuildTest, KeepsStudentFormattingOutsideTheChange) {
  std::string student =
      "fun main() {\n"
      "  // my notes\n"
      "  val a   = 1\n"
      "\n"
      "  println( a )\n"
      "}\n";
  std::string llm = "fun main() {\n    val a = 1\n    val b = a + 1\n    println(a)\n}\n";
  std::string model = llm + "fun pad() {\n    val x = 1\n}\n";
  CodeHintResult r = Build(student, llm, model);
  EXPECT_EQ(r.hint.after,
            "fun main() {\n"
            "  // my notes\n"
            "  val a   = 1\n"
            "  val b = a + 1\n"
            "\n"
            "  println( a )\n"
            "}\n");
}

TEST(BuildTest, IdempotentOnOwnOutput) {
  for (const auto& c : testing::GoldenMatrix()) {
    CodeHintResult r = Build(c.student, c.llm, c.model);
    try {
      CodeHintResult again = BuildCodeHint(r.hint.after, Parse(r.hint.after),
                                           Parse(r.hint.after), Parse(c.model));
      ADD_FAILURE() << c.name << " produced another hint:\n" << again.hint.after;
    } catch (const NoActionableChange&) {
    }
  }
}

TEST(LinesTest, HighlightAndCommentRegion) {
  std::string student = "fun main() {\n    val a = 1\n}\n";
  std::string llm = "fun main() {\n    val a = 1\n    println(a)\n}\n";
  CodeHintResult r = Build(student, llm, llm + "fun pad() {\n    val x = 1\n}\n");
  SourceModule before = Parse(student);
  LineSpan in_before = UnitLinesInBefore(before, student, r.unit);
  EXPECT_EQ(in_before, (LineSpan{3, 3}));
  auto in_after = UnitLinesInAfter(before, Parse(r.hint.after), r.unit);
  ASSERT_TRUE(in_after.has_value());
  EXPECT_EQ(*in_after, (LineSpan{3, 3}));
  EXPECT_EQ(CommentsInLines(Parse("fun f() {\n    // a\n    val x = 1 // b\n}\n"), {3, 3}), 1);
}


// Generated (student, llm, model) triples: every hint is one step, stays in
// scope and carries no comments in the lines it changes.
TEST(BuildPropertyTest, GeneratedTriples) {
  int built = 0;
  for (unsigned seed = 1; seed <= 400; ++seed) {
    SCOPED_TRACE(seed);
    testing::ProgramGenerator gen(seed);
    SourceModule model = gen.Module();
    std::string student_text = syntax::Print(gen.Mutate(model, 3));
    std::string llm_text = syntax::Print(gen.Mutate(model, 2));
    std::string model_text = syntax::Print(model);
    SourceModule student = Parse(student_text);
    CodeHintResult r;
    try {
      r = BuildCodeHint(student_text, student, Parse(llm_text), Parse(model_text));
    } catch (const NoActionableChange&) {
      continue;
    }
    ++built;
    SourceModule after;
    ASSERT_NO_THROW(after = Parse(r.hint.after)) << r.hint.after;
    diff::ChangeSet d = diff::DiffModules(student, after);
    ASSERT_EQ(d.UnitCount(), 1u) << student_text << "\n---\n" << r.hint.after;
    ScopeSet scope = ComputeScope(student, Parse(model_text));
    EXPECT_TRUE(scope.contains(d.functions[0].function));
    if (auto span = UnitLinesInAfter(student, after, d.functions[0].units[0])) {
      std::istringstream lines(r.hint.after);
      std::string line;
      for (int n = 1; std::getline(lines, line); ++n) {
        if (n < span->start_line || n > span->end_line) continue;
        EXPECT_EQ(line.find("//"), std::string::npos) << line << "\n" << student_text << "\n---\n" << r.hint.after << "\n" << r.hint.retained_unit.dump();
        EXPECT_EQ(line.find("/*"), std::string::npos) << line;
      }
    }
  }
  EXPECT_GE(built, 200);
}

}  // namespace
}  // namespace stepwise::hints
