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

#include "stepwise/eval/harness.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "stepwise/core/text.h"
#include "stepwise/diff/ast_diff.h"
#include "stepwise/hints/inspections.h"
#include "stepwise/pipeline/pipeline.h"
#include "stepwise/prompts/prompt_kit.h"
#include "stepwise/syntax/parser.h"

namespace stepwise::eval {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> CodeLines(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& line : SplitLines(text)) {
    std::string t = Trim(line);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

// Inserted lines of `after`, plus per-hunk counts.
struct LineDiff {
  LineCounts counts;
  std::vector<std::string> inserted;
};

LineDiff DiffLines(std::string_view before, std::string_view after) {
  std::vector<std::string> a = CodeLines(before), b = CodeLines(after);
  const size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = n; i-- > 0;) {
    for (size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  LineDiff out;
  int del = 0, ins = 0;
  auto close_hunk = [&] {
    int changed = std::min(del, ins);
    out.counts.changed += changed;
    out.counts.added += ins - changed;
    out.counts.deleted += del - changed;
    del = ins = 0;
  };
  size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      close_hunk();
      ++i;
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      out.inserted.push_back(b[j]);
      ++ins;
      ++j;
    } else {
      ++del;
      ++i;
    }
  }
  close_hunk();
  return out;
}

bool HeaderClean(const syntax::Stmt& s) {
  for (syntax::Expr e : s.exprs) {
    if (!hints::ApplyInspections(e).empty()) return false;
  }
  for (const auto& br : s.branches) {
    for (syntax::Expr c : br.conditions) {
      if (!hints::ApplyInspections(c).empty()) return false;
    }
  }
  return true;
}

bool UnitClean(const diff::ChangeUnit& u) {
  if (u.op == diff::EditOp::kDelete) return true;
  if (u.op == diff::EditOp::kHeader) return !u.statement || HeaderClean(*u.statement);
  if (u.statement) return hints::FindInspectionHits(*u.statement).empty();
  if (u.function_decl) return hints::FindInspectionHits(*u.function_decl).empty();
  return true;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::string Bool(bool b) { return b ? "true" : "false"; }

std::string Ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", r);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

LineCounts CountLineChanges(std::string_view before, std::string_view after) {
  return DiffLines(before, after).counts;
}

LineCounts CountUnitLines(const json& change_set) {
  LineCounts total;
  for (const auto& fn : change_set) {
    for (const auto& u : fn.at("units")) {
      std::string b = u.at("before").is_string() ? u.at("before").get<std::string>() : "";
      std::string a = u.at("after").is_string() ? u.at("after").get<std::string>() : "";
      LineCounts c = CountLineChanges(b, a);
      total.added += c.added;
      total.changed += c.changed;
      total.deleted += c.deleted;
    }
  }
  return total;
}

HintMetrics ScoreHint(const HintBundle& bundle, const StudentSnapshot& snapshot) {
  HintMetrics m;
  try {
    m.subgoal_amount = static_cast<int>(
        prompts::ParseSubgoalResponse(bundle.subgoal_plan.raw_response).subgoals.size());
  } catch (const prompts::MalformedResponse&) {
    m.subgoal_amount = static_cast<int>(bundle.subgoal_plan.subgoals.size());
  }
  m.no_code_leak = std::any_of(bundle.subgoal_plan.subgoals.begin(), bundle.subgoal_plan.subgoals.end(),
                               [](const Subgoal& s) { return s.kind != SubgoalKind::kCode; });
  m.text_words = CountWords(bundle.text_hint.text);
  m.text_sentences = static_cast<int>(SplitSentences(bundle.text_hint.text).size());

  const CodeHint& code = bundle.code_hint;
  LineDiff d = DiffLines(code.before, code.after);
  m.code_added = d.counts.added;
  m.code_changed = d.counts.changed;
  m.code_deleted = d.counts.deleted;
  if (!d.inserted.empty()) {
    std::vector<std::string> existing = CodeLines(snapshot.code);
    std::set<std::string> have(existing.begin(), existing.end());
    long present = std::count_if(d.inserted.begin(), d.inserted.end(),
                                 [&](const std::string& l) { return have.count(l) > 0; });
    m.intersection_ratio = static_cast<double>(present) / static_cast<double>(d.inserted.size());
  }

  try {
    syntax::SourceModule before =
        Trim(code.before).empty() ? syntax::SourceModule{} : syntax::Parse(code.before);
    syntax::SourceModule after = syntax::Parse(code.after);
    m.parses = true;
    diff::ChangeSet changes = diff::DiffModules(before, after);
    m.single_step = changes.UnitCount() == 1;
    std::vector<diff::ChangeUnit> units = changes.AllUnits();
    m.inspection_clean = std::all_of(units.begin(), units.end(), UnitClean);
  } catch (const syntax::SyntaxError&) {
    m.parses = false;
  }
  return m;
}

json ToJson(const HintMetrics& m) {
  return json{{"subgoalAmount", m.subgoal_amount},
              {"noCodeLeak", m.no_code_leak},
              {"textWords", m.text_words},
              {"textSentences", m.text_sentences},
              {"codeAdded", m.code_added},
              {"codeChanged", m.code_changed},
              {"codeDeleted", m.code_deleted},
              {"intersectionRatio", m.intersection_ratio ? json(*m.intersection_ratio) : json(nullptr)},
              {"parses", m.parses},
              {"inspectionClean", m.inspection_clean},
              {"singleStep", m.single_step}};
}

std::vector<SnapshotCase> LoadSnapshots(const fs::path& dir) {
  std::vector<SnapshotCase> out;
  if (!fs::is_directory(dir)) throw std::invalid_argument("snapshot directory not found: " + dir.string());
  for (const auto& task_dir : fs::directory_iterator(dir)) {
    if (!task_dir.is_directory()) continue;
    for (const auto& f : fs::directory_iterator(task_dir.path())) {
      if (!f.is_regular_file() || f.path().extension() != ".kt") continue;
      SnapshotCase c;
      std::string task_id = task_dir.path().filename().string();
      std::string name = f.path().stem().string();
      c.id = task_id + "/" + name;
      c.snapshot.task_id = task_id;
      c.snapshot.code = ReadFile(f.path());
      fs::path errors = task_dir.path() / (name + ".errors.txt");
      if (fs::exists(errors)) c.snapshot.test_errors = ReadFile(errors);
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

int EvaluationReport::violation_count() const {
  int n = 0;
  for (const auto& r : rows) n += static_cast<int>(r.violations.size());
  return n;
}

int EvaluationReport::error_count() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [](const ReportRow& r) { return r.outcome == "Error"; }));
}

EvaluationReport RunCorpus(const std::vector<TaskSpec>& pack,
                           const std::vector<SnapshotCase>& snapshots, llm::Gateway& gateway) {
  EvaluationReport report;
  pipeline::Pipeline pipe(gateway);
  for (const auto& c : snapshots) {
    ReportRow row;
    row.id = c.id;
    row.task_id = c.snapshot.task_id;
    const TaskSpec* task = FindTask(pack, c.snapshot.task_id);
    if (!task) {
      row.outcome = "Error";
      row.reason = "UnknownTask";
      row.message = "no task " + c.snapshot.task_id + " in the task pack";
      report.rows.push_back(std::move(row));
      continue;
    }
    try {
      pipeline::PipelineOutcome out = pipe.Generate(*task, c.snapshot);
      row.heuristic = out.heuristic;
      row.inspections = out.inspections_fired;
      row.fingerprints = out.fingerprints;
      if (out.bundle) {
        row.outcome = "Hint";
        HintMetrics m = ScoreHint(*out.bundle, c.snapshot);
        if (!m.single_step) row.violations.push_back("hint is not a single step");
        if (!m.parses) row.violations.push_back("hint code does not parse");
        if (!m.inspection_clean) row.violations.push_back("inspection hits in the change");
        if (m.no_code_leak) row.violations.push_back("no-code subgoal survived filtering");
        LineCounts serialized = CountUnitLines(out.bundle->code_hint.diff);
        if (serialized != LineCounts{m.code_added, m.code_changed, m.code_deleted}) {
          row.violations.push_back("line counts disagree with the change set");
        }
        row.metrics = m;
        row.text_hint = out.bundle->text_hint;
        row.code_hint = out.bundle->code_hint;
      } else {
        row.outcome = "NoHint";
        row.reason = std::string(pipeline::NoHintReasonName(out.no_hint->reason));
        row.message = out.no_hint->message;
        if (out.no_hint->reason == pipeline::NoHintReason::kInvariantViolation) {
          row.violations.push_back(out.no_hint->message);
        }
      }
    } catch (const llm::FixtureMiss& e) {
      row.outcome = "Error";
      row.reason = "FixtureMiss";
      row.message = e.what();
      report.missing_fingerprints.push_back(e.fingerprint());
    } catch (const llm::ProviderTimeout& e) {
      row.outcome = "Error";
      row.reason = "ProviderTimeout";
      row.message = e.what();
    } catch (const llm::ProviderError& e) {
      row.outcome = "Error";
      row.reason = "ProviderError";
      row.message = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

json ReportJson(const EvaluationReport& report, const std::string& generated_at) {
  json rows = json::array();
  std::map<std::string, int> no_hint;
  std::map<std::string, std::vector<double>> series;
  int scored = 0;
  for (const auto& r : report.rows) {
    json row = {{"id", r.id}, {"taskId", r.task_id}, {"outcome", r.outcome}};
    if (!r.reason.empty()) row["reason"] = r.reason;
    if (!r.message.empty()) row["message"] = r.message;
    if (!r.heuristic.empty()) row["heuristic"] = r.heuristic;
    row["inspections"] = r.inspections;
    row["fingerprints"] = r.fingerprints;
    row["violations"] = r.violations;
    if (r.metrics) {
      ++scored;
      row["metrics"] = ToJson(*r.metrics);
      const HintMetrics& m = *r.metrics;
      series["subgoalAmount"].push_back(m.subgoal_amount);
      series["textWords"].push_back(m.text_words);
      series["textSentences"].push_back(m.text_sentences);
      series["codeAdded"].push_back(m.code_added);
      series["codeChanged"].push_back(m.code_changed);
      series["codeDeleted"].push_back(m.code_deleted);
      if (m.intersection_ratio) series["intersectionRatio"].push_back(*m.intersection_ratio);
    }
    if (r.text_hint) row["textHint"] = ToJson(*r.text_hint);
    if (r.code_hint) {
      row["codeHint"] = {{"targetFunction", r.code_hint->target_function.ToString()},
                         {"after", r.code_hint->after},
                         {"diff", r.code_hint->diff},
                         {"provenance", ProvenanceName(r.code_hint->provenance)}};
    }
    if (r.outcome == "NoHint") ++no_hint[r.reason];
    rows.push_back(std::move(row));
  }
  json metrics = json::object();
  for (const auto& [name, values] : series) {
    if (values.empty()) continue;
    double sum = 0;
    for (double v : values) sum += v;
    metrics[name] = {{"mean", sum / static_cast<double>(values.size())}, {"median", Median(values)}};
  }
  json aggregate = {{"snapshots", report.rows.size()},
                    {"scored", scored},
                    {"errors", report.error_count()},
                    {"invariantViolations", report.violation_count()},
                    {"noHint", no_hint},
                    {"missingFingerprints", report.missing_fingerprints}};
  if (!metrics.empty()) aggregate["metrics"] = metrics;
  return json{{"generatedAt", generated_at}, {"aggregate", aggregate}, {"rows", rows}};
}

std::string ReportCsv(const EvaluationReport& report) {
  std::string out =
      "snapshot,task_id,outcome,reason,subgoal_amount,no_code_leak,text_words,text_sentences,"
      "code_added,code_changed,code_deleted,intersection_ratio,parses,inspection_clean,single_step,"
      "violations\n";
  for (const auto& r : report.rows) {
    std::vector<std::string> f = {CsvField(r.id), CsvField(r.task_id), r.outcome, r.reason};
    if (r.metrics) {
      const HintMetrics& m = *r.metrics;
      f.insert(f.end(), {std::to_string(m.subgoal_amount), Bool(m.no_code_leak),
                         std::to_string(m.text_words), std::to_string(m.text_sentences),
                         std::to_string(m.code_added), std::to_string(m.code_changed),
                         std::to_string(m.code_deleted),
                         m.intersection_ratio ? Ratio(*m.intersection_ratio) : "",
                         Bool(m.parses), Bool(m.inspection_clean), Bool(m.single_step)});
    } else {
      f.insert(f.end(), 11, "");
    }
    f.push_back(std::to_string(r.violations.size()));
    for (size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
    out += "\n";
  }
  return out;
}

}  // namespace stepwise::eval
