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

#include <fstream>
#include <random>

#include "stepwise/eval/harness.h"
#include "support/transports.h"

namespace stepwise::eval {
namespace {

namespace fs = std::filesystem;

HintBundle Bundle(const std::string& before, const std::string& after, const std::string& text) {
  HintBundle b;
  b.text_hint.text = text;
  b.code_hint.before = before;
  b.code_hint.after = after;
  b.subgoal_plan.raw_response = "1. a [code]\n2. b [no-code]\n3. c [code]\n";
  b.subgoal_plan.subgoals = {{1, "a", SubgoalKind::kCode}, {2, "c", SubgoalKind::kCode}};
  return b;
}

TEST(ScoreTest, TextCounts) {
  HintBundle b = Bundle("fun main() {\n}\n", "fun main() {\n    println(1)\n}\n",
                        "Add a loop. Print each value.");
  HintMetrics m = ScoreHint(b, {"t", b.code_hint.before, std::nullopt, 0});
  EXPECT_EQ(m.text_words, 6);
  EXPECT_EQ(m.text_sentences, 2);
  EXPECT_EQ(m.subgoal_amount, 3);
  EXPECT_FALSE(m.no_code_leak);
}

TEST(ScoreTest, OneAddedLine) {
  HintBundle b = Bundle("fun main() {\n    val a = 1\n}\n",
                        "fun main() {\n    val a = 1\n    println(a)\n}\n", "Print it.");
  HintMetrics m = ScoreHint(b, {"t", b.code_hint.before, std::nullopt, 0});
  EXPECT_EQ(m.code_added, 1);
  EXPECT_EQ(m.code_changed, 0);
  EXPECT_EQ(m.code_deleted, 0);
  ASSERT_TRUE(m.intersection_ratio);
  EXPECT_EQ(*m.intersection_ratio, 0.0);
  EXPECT_TRUE(m.parses);
  EXPECT_TRUE(m.single_step);
  EXPECT_TRUE(m.inspection_clean);
}

TEST(ScoreTest, RepeatedLineIntersects) {
  HintBundle b = Bundle("fun main() {\n    println(a)\n}\n",
                        "fun main() {\n    println(a)\n    println(a)\n}\n", "Print it again.");
  HintMetrics m = ScoreHint(b, {"t", b.code_hint.before, std::nullopt, 0});
  ASSERT_TRUE(m.intersection_ratio);
  EXPECT_EQ(*m.intersection_ratio, 1.0);
}

TEST(ScoreTest, QualityFlags) {
  HintBundle dirty = Bundle("fun main() {\n}\n", "fun main() {\n    val ok = done == true\n}\n", "Add it.");
  EXPECT_FALSE(ScoreHint(dirty, {"t", dirty.code_hint.before, std::nullopt, 0}).inspection_clean);
  HintBundle two = Bundle("fun main() {\n}\n", "fun main() {\n    val a = 1\n    val b = 2\n}\n", "Add.");
  EXPECT_FALSE(ScoreHint(two, {"t", two.code_hint.before, std::nullopt, 0}).single_step);
  HintBundle broken = Bundle("fun main() {\n}\n", "fun main( {\n", "Add.");
  EXPECT_FALSE(ScoreHint(broken, {"t", broken.code_hint.before, std::nullopt, 0}).parses);
  HintBundle leak = Bundle("", "fun main() {}\n", "Add.");
  leak.subgoal_plan.subgoals.push_back({3, "run", SubgoalKind::kNoCode});
  EXPECT_TRUE(ScoreHint(leak, {"t", "", std::nullopt, 0}).no_code_leak);
  EXPECT_EQ(ScoreHint(leak, {"t", "", std::nullopt, 0}),
            ScoreHint(leak, {"t", "", std::nullopt, 0}));
}

TEST(LineCountTest, HandExamples) {
  EXPECT_EQ(CountLineChanges("a\nb\nc\n", "a\nB\nc\n"), (LineCounts{0, 1, 0}));
  EXPECT_EQ(CountLineChanges("a\nb\n", "a\nx\ny\nb\n"), (LineCounts{2, 0, 0}));
  EXPECT_EQ(CountLineChanges("a\nb\nc\n", "a\n"), (LineCounts{0, 0, 2}));
  EXPECT_EQ(CountLineChanges("a\n\n  b\n", "a\nb  \n\n\n"), (LineCounts{0, 0, 0}));
  EXPECT_EQ(CountLineChanges("x\ny\n", "p\nq\nr\n"), (LineCounts{1, 2, 0}));
}

// Net growth must equal the change in non-blank line count, whatever the
// pairing of edits into changed lines.
TEST(LineCountTest, NetGrowthMatchesLineCounts) {
  std::mt19937 rng(11);
  auto random_text = [&] {
    std::string s;
    int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) s += std::string(1, static_cast<char>('a' + rng() % 4)) + "\n";
    return s;
  };
  for (int round = 0; round < 500; ++round) {
    std::string a = random_text(), b = random_text();
    LineCounts c = CountLineChanges(a, b);
    int la = static_cast<int>(std::count(a.begin(), a.end(), '\n'));
    int lb = static_cast<int>(std::count(b.begin(), b.end(), '\n'));
    EXPECT_EQ(c.added - c.deleted, lb - la) << a << "|" << b;
    EXPECT_GE(c.added, 0);
    EXPECT_GE(c.changed, 0);
    EXPECT_GE(c.deleted, 0);
  }
}

TEST(LineCountTest, FromSerializedChangeSet) {
  nlohmann::json cs = nlohmann::json::parse(R"js([
    {"function": "main/0", "units": [
      {"kind": "AddConstruct", "before": null, "after": "if (a) {\n    TODO()\n}"},
      {"kind": "HeaderModification", "before": "while (x)", "after": "while (y)"}
    ]}])js");
  EXPECT_EQ(CountUnitLines(cs), (LineCounts{3, 1, 0}));
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("stepwise-ev-" + RandomId())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(SnapshotTest, LoadsCodeAndErrors) {
  TempDir dir;
  fs::create_directories(dir.path() / "b-task");
  fs::create_directories(dir.path() / "a-task");
  std::ofstream(dir.path() / "b-task" / "s1.kt") << "fun main() {}\n";
  std::ofstream(dir.path() / "a-task" / "zz.kt") << "";
  std::ofstream(dir.path() / "a-task" / "zz.errors.txt") << "boom";
  std::ofstream(dir.path() / "a-task" / "notes.md") << "ignored";
  auto cases = LoadSnapshots(dir.path());
  ASSERT_EQ(cases.size(), 2u);
  EXPECT_EQ(cases[0].id, "a-task/zz");
  EXPECT_EQ(cases[0].snapshot.test_errors, std::optional<std::string>("boom"));
  EXPECT_EQ(cases[1].snapshot.code, "fun main() {}\n");
  EXPECT_FALSE(cases[1].snapshot.test_errors);
}

TaskSpec Task() {
  TaskSpec t;
  t.id = "t";
  t.description = "Print a greeting.";
  t.model_solution = "fun main() {\n    val name = readln()\n    println(name)\n    println(\"Hi\")\n    println(\"Bye\")\n}\n";
  t.theory_topics = {"output"};
  return t;
}

TEST(CorpusTest, EmptyCorpus) {
  llm::ProviderConfig c;
  c.mode = llm::ProviderMode::kLive;
  auto counter = std::make_shared<testing::CountingTransport>();
  llm::Gateway gw(c, counter);
  EvaluationReport r = RunCorpus({Task()}, {}, gw);
  EXPECT_TRUE(r.rows.empty());
  nlohmann::json j = ReportJson(r, "T");
  EXPECT_FALSE(j["aggregate"].contains("metrics"));
  EXPECT_EQ(j["aggregate"]["invariantViolations"], 0);
  EXPECT_EQ(ReportCsv(r).find('\n'), ReportCsv(r).size() - 1);
}

TEST(CorpusTest, ScoredSyntaxErrorAndMissRows) {
  llm::ProviderConfig c;
  c.mode = llm::ProviderMode::kLive;
  auto script = std::make_shared<testing::ScriptedTransport>([](const std::string& prompt) {
    if (prompt.find("## Subgoals") != std::string::npos) {
      return std::string("```kotlin\nfun main() {\n    val name = readln()\n    println(name)\n}\n```");
    }
    if (prompt.find("## Improved code") != std::string::npos) return std::string("Print the name.");
    return std::string("1. Print the name [code]\n2. Run it [no-code]\n");
  });
  llm::Gateway gw(c, script);
  std::vector<SnapshotCase> cases = {
      {"t/ok", {"t", "fun main() {\n    val name = readln()\n}\n", std::nullopt, 0}},
      {"t/broken", {"t", "fun main( {\n", std::nullopt, 0}},
      {"x/unknown", {"x", "", std::nullopt, 0}},
  };
  EvaluationReport r = RunCorpus({Task()}, cases, gw);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].outcome, "Hint");
  ASSERT_TRUE(r.rows[0].metrics);
  EXPECT_EQ(r.rows[0].metrics->code_added, 1);
  EXPECT_TRUE(r.rows[0].violations.empty());
  EXPECT_EQ(r.rows[1].outcome, "NoHint");
  EXPECT_EQ(r.rows[1].reason, "SyntaxError");
  EXPECT_EQ(r.rows[2].outcome, "Error");
  EXPECT_EQ(r.violation_count(), 0);
  EXPECT_EQ(r.error_count(), 1);

  std::string csv = ReportCsv(r);
  EXPECT_NE(csv.find("t/ok,t,Hint,,2,false,3,1,1,0,0,0.0000,true,true,true,0\n"), std::string::npos)
      << csv;
  nlohmann::json j = ReportJson(r, "T");
  EXPECT_EQ(j["aggregate"]["noHint"]["SyntaxError"], 1);
  EXPECT_EQ(j["aggregate"]["metrics"]["codeAdded"]["mean"], 1.0);

  llm::ProviderConfig replay;
  replay.mode = llm::ProviderMode::kReplay;
  TempDir empty;
  replay.fixture_path = empty.path();
  llm::Gateway miss_gw(replay, std::make_shared<testing::CountingTransport>());
  EvaluationReport missed = RunCorpus({Task()}, {cases[0]}, miss_gw);
  EXPECT_EQ(missed.rows[0].reason, "FixtureMiss");
  EXPECT_EQ(missed.missing_fingerprints.size(), 1u);
}

}  // namespace
}  // namespace stepwise::eval
