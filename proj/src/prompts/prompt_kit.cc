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

#include "stepwise/prompts/prompt_kit.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <regex>

#include "stepwise/core/text.h"
#include "stepwise/diff/ast_diff.h"
#include "stepwise/hints/postprocessor.h"
#include "stepwise/syntax/parser.h"
#include "stepwise/syntax/printer.h"
#include "stepwise/syntax/queries.h"

namespace stepwise::prompts {

namespace internal {
const std::map<std::string_view, std::string_view>& Templates();
}  // namespace internal

namespace {

using Vars = std::map<std::string, std::string>;

std::string_view Template(std::string_view name) {
  const auto& all = internal::Templates();
  auto it = all.find(name);
  if (it == all.end()) throw std::logic_error("missing prompt template " + std::string(name));
  return it->second;
}

// Single pass, so substituted values are never expanded again.
std::string Render(std::string_view tpl, const Vars& vars) {
  std::string out;
  size_t i = 0;
  while (i < tpl.size()) {
    size_t open = tpl.find("{{", i);
    if (open == std::string_view::npos) break;
    size_t close = tpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    out.append(tpl.substr(i, open - i));
    std::string key(tpl.substr(open + 2, close - open - 2));
    auto it = vars.find(key);
    if (it == vars.end()) throw std::logic_error("unbound template variable " + key);
    out += it->second;
    i = close + 2;
  }
  out.append(tpl.substr(i));
  return out;
}

std::string Bullets(const std::vector<std::string>& items) {
  if (items.empty()) return "(none)";
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += "\n";
    out += "- " + item;
  }
  return out;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string WithoutFinalNewline(std::string_view s) {
  std::string out(s);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

syntax::SourceModule ParseOrEmpty(std::string_view code) {
  return Trim(code).empty() ? syntax::SourceModule{} : syntax::Parse(code);
}

PromptRequest Make(Stage stage, std::string_view task_id, std::string text, int attempt) {
  PromptRequest r;
  r.stage = stage;
  r.task_id = std::string(task_id);
  r.rendered_text = std::move(text);
  r.attempt = attempt;
  r.fingerprint = Fingerprint(stage, r.rendered_text, attempt);
  return r;
}

struct Fence {
  size_t begin;       // first character of the opening fence line
  size_t body_begin;  // first character after the opening line
  size_t body_end;    // start of the closing fence line (or text end)
  size_t end;         // after the closing fence line
};

std::vector<Fence> FindFences(std::string_view text) {
  std::vector<Fence> out;
  size_t pos = 0;
  while (true) {
    size_t open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    size_t eol = text.find('\n', open);
    Fence f;
    f.begin = open;
    f.body_begin = eol == std::string_view::npos ? text.size() : eol + 1;
    size_t close = text.find("```", f.body_begin);
    if (close == std::string_view::npos) {
      f.body_end = f.end = text.size();
    } else {
      f.body_end = close;
      size_t close_eol = text.find('\n', close);
      f.end = close_eol == std::string_view::npos ? text.size() : close_eol + 1;
    }
    out.push_back(f);
    pos = f.end;
  }
  return out;
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kSubgoals: return "Subgoals";
    case Stage::kCodeHint: return "CodeHint";
    case Stage::kTextHint: return "TextHint";
  }
  return "?";
}

std::optional<Stage> StageFromName(std::string_view name) {
  for (Stage s : {Stage::kSubgoals, Stage::kCodeHint, Stage::kTextHint}) {
    if (StageName(s) == name) return s;
  }
  return std::nullopt;
}

std::string Fingerprint(Stage stage, std::string_view rendered_text, int attempt) {
  std::string input;
  input += kTemplateVersion;
  input += '\0';
  input += StageName(stage);
  input += '\0';
  input += rendered_text;
  input += '\0';
  input += std::to_string(attempt);

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), input.data(), input.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

PromptRequest BuildSubgoalPrompt(const TaskSpec& task, std::string_view student_code,
                                 std::string_view language_name, int attempt) {
  syntax::SourceModule model = syntax::Parse(task.model_solution);
  syntax::SourceModule student = ParseOrEmpty(student_code);
  std::vector<std::string> literals;
  for (const auto& s : syntax::ExtractStringLiterals(model)) literals.push_back(syntax::QuoteString(s));
  Vars vars = {
      {"language", std::string(language_name)},
      {"language_tag", Lower(language_name)},
      {"min_subgoals", std::to_string(kMinSubgoals)},
      {"task_description", WithoutFinalNewline(task.description)},
      {"model_signatures", Bullets(syntax::ExtractSignatures(model))},
      {"student_functions", Bullets(syntax::ExtractSignatures(student))},
      {"predefined_hints", Bullets(task.predefined_hints)},
      {"theory_topics", Bullets(task.theory_topics)},
      {"string_literals", Bullets(literals)},
      {"student_code", WithoutFinalNewline(student_code)},
  };
  return Make(Stage::kSubgoals, task.id, Render(Template("subgoals"), vars), attempt);
}

SubgoalPlan ParseSubgoalResponse(std::string_view text, std::string_view task_id) {
  static const std::regex kLine(R"(^\s*\d+\s*[.)]\s*(.*?)\s*\[(code|no-code)\]\s*$)",
                                std::regex::icase);
  SubgoalPlan plan;
  plan.task_id = std::string(task_id);
  plan.raw_response = std::string(text);
  int number = 0;
  for (const auto& line : SplitLines(text)) {
    if (Trim(line).empty()) continue;
    ++number;
    std::smatch m;
    if (!std::regex_match(line, m, kLine)) {
      throw MalformedResponse("subgoal line " + std::to_string(number) + " has no [code]/[no-code] label");
    }
    std::string body = Trim(m[1].str());
    if (body.empty()) throw MalformedResponse("subgoal line " + std::to_string(number) + " is empty");
    Subgoal s;
    s.index = static_cast<int>(plan.subgoals.size()) + 1;
    s.text = std::move(body);
    s.kind = Lower(m[2].str()) == "code" ? SubgoalKind::kCode : SubgoalKind::kNoCode;
    plan.subgoals.push_back(std::move(s));
  }
  if (plan.subgoals.empty()) throw MalformedResponse("no subgoals in response");
  return plan;
}

std::string RenderPlan(const SubgoalPlan& plan) {
  std::string out;
  for (const auto& s : plan.subgoals) {
    out += std::to_string(s.index) + ". " + s.text +
           (s.kind == SubgoalKind::kCode ? " [code]" : " [no-code]") + "\n";
  }
  return out;
}

SubgoalPlan FilterCodeSubgoals(const SubgoalPlan& plan) {
  SubgoalPlan out = plan;
  out.subgoals.clear();
  for (const auto& s : plan.subgoals) {
    if (s.kind != SubgoalKind::kCode) continue;
    Subgoal copy = s;
    copy.index = static_cast<int>(out.subgoals.size()) + 1;
    out.subgoals.push_back(std::move(copy));
  }
  return out;
}

PromptRequest BuildCodeHintPrompt(const SubgoalPlan& plan, std::string_view task_id,
                                  std::string_view student_code,
                                  const std::optional<std::string>& test_errors,
                                  std::string_view language_name, int attempt) {
  std::string subgoals;
  for (const auto& s : plan.subgoals) {
    if (s.kind != SubgoalKind::kCode) throw std::invalid_argument("plan holds a no-code subgoal");
    subgoals += std::to_string(s.index) + ". " + s.text + "\n";
  }
  Vars vars = {
      {"language", std::string(language_name)},
      {"language_tag", Lower(language_name)},
      {"subgoals", subgoals.empty() ? "(none)" : WithoutFinalNewline(subgoals)},
      {"student_code", WithoutFinalNewline(student_code)},
      {"test_errors", test_errors && !Trim(*test_errors).empty() ? WithoutFinalNewline(*test_errors)
                                                                 : "(none)"},
  };
  return Make(Stage::kCodeHint, task_id, Render(Template("code_hint"), vars), attempt);
}

CodeResponse ParseCodeResponse(std::string_view text) {
  CodeResponse out;
  auto fences = FindFences(text);
  if (!fences.empty()) {
    if (fences.size() > 1) {
      out.warnings.push_back(std::to_string(fences.size()) + " code blocks in response; using the first");
    }
    out.code = std::string(text.substr(fences[0].body_begin, fences[0].body_end - fences[0].body_begin));
  } else {
    out.code = std::string(text);
  }
  if (Trim(out.code).empty()) throw MalformedResponse("no code found in response");
  out.code = WithoutFinalNewline(out.code) + "\n";
  try {
    out.module = syntax::Parse(out.code);
  } catch (const syntax::SyntaxError& e) {
    throw UnparseableHintCode(std::string("hint code does not parse: ") + e.what());
  }
  return out;
}

PromptRequest BuildTextHintPrompt(std::string_view task_id, std::string_view student_code,
                                  const CodeHint& improved, std::string_view language_name,
                                  int attempt) {
  Vars vars = {
      {"language", std::string(language_name)},
      {"language_tag", Lower(language_name)},
      {"student_code", WithoutFinalNewline(student_code)},
      {"improved_code", WithoutFinalNewline(improved.after)},
  };
  return Make(Stage::kTextHint, task_id, Render(Template("text_hint"), vars), attempt);
}

TextHint ParseTextResponse(std::string_view text, const CodeHint& hint) {
  std::string prose;
  size_t pos = 0;
  for (const auto& f : FindFences(text)) {
    prose.append(text.substr(pos, f.begin - pos));
    prose += ' ';
    pos = f.end;
  }
  prose.append(text.substr(std::min(pos, text.size())));

  std::string collapsed;
  for (char c : prose) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!collapsed.empty() && collapsed.back() != ' ') collapsed += ' ';
    } else {
      collapsed += c;
    }
  }
  auto sentences = SplitSentences(collapsed);
  if (sentences.empty()) throw EmptyResponse("empty textual hint");
  if (sentences.size() > static_cast<size_t>(kMaxHintSentences)) sentences.resize(kMaxHintSentences);

  TextHint out;
  for (const auto& s : sentences) {
    if (!out.text.empty()) out.text += ' ';
    out.text += s;
  }
  syntax::SourceModule before = ParseOrEmpty(hint.before);
  diff::ChangeSet changes = diff::DiffModules(before, syntax::Parse(hint.after));
  if (changes.empty()) {
    out.highlight = LineSpan{1, 1};
  } else {
    out.highlight = hints::UnitLinesInBefore(before, hint.before, changes.AllUnits().front());
  }
  return out;
}

PromptRequest Reask(const PromptRequest& request) {
  PromptRequest r = request;
  r.rendered_text += Template("reask");
  r.fingerprint = Fingerprint(r.stage, r.rendered_text, r.attempt);
  return r;
}

}  // namespace stepwise::prompts
