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

// stepwise serve | eval | record

#include <spdlog/spdlog.h>

#include <iostream>

#include "CLI11.hpp"
#include "stepwise/cli/commands.h"

namespace {

using stepwise::cli::ProviderFlags;

void AddProviderFlags(CLI::App* cmd, ProviderFlags& p, bool with_mode) {
  if (with_mode) {
    cmd->add_option("--provider-mode", p.mode, "replay, record or live")
        ->envname("STEPWISE_PROVIDER_MODE")
        ->capture_default_str();
    cmd->add_option("--fixtures", p.fixtures, "Fixture directory or bundle file")
        ->envname("STEPWISE_FIXTURES");
  }
  cmd->add_option("--endpoint", p.endpoint, "Chat-completion URL")->envname("STEPWISE_LLM_ENDPOINT");
  cmd->add_option("--model", p.model, "Model name sent to the provider")->envname("STEPWISE_LLM_MODEL");
  cmd->add_option("--token-env", p.token_env, "Variable holding the bearer token")->capture_default_str();
  cmd->add_option("--timeout", p.timeout_seconds, "Provider timeout in seconds")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Next-step hints for introductory programming tasks"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  stepwise::cli::ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the hint HTTP service");
  serve_cmd->add_option("--task-pack", serve.task_pack)->required()->envname("STEPWISE_TASK_PACK");
  serve_cmd->add_option("--data-dir", serve.data_dir)->envname("STEPWISE_DATA_DIR")->capture_default_str();
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->envname("STEPWISE_PORT")->capture_default_str();
  serve_cmd->add_option("--cors-origin", serve.cors_origin)->capture_default_str();
  AddProviderFlags(serve_cmd, serve.provider, true);

  stepwise::cli::EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score replayed hints over a snapshot corpus");
  eval_cmd->add_option("--task-pack", eval.task_pack)->required();
  eval_cmd->add_option("--snapshots", eval.snapshots)->required();
  eval_cmd->add_option("--fixtures", eval.fixtures)->required();
  eval_cmd->add_option("--out", eval.out)->required();

  stepwise::cli::RecordOptions record;
  auto* record_cmd = app.add_subcommand("record", "Record fixtures against a live provider");
  record_cmd->add_option("--task-pack", record.task_pack)->required();
  record_cmd->add_option("--snapshots", record.snapshots)->required();
  record_cmd->add_option("--out", record.out, "Fixture directory")->required();
  AddProviderFlags(record_cmd, record.provider, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return stepwise::cli::kUsage;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  if (*serve_cmd) return stepwise::cli::Serve(serve, std::cout, std::cerr);
  if (*eval_cmd) return stepwise::cli::Eval(eval, std::cout, std::cerr);
  return stepwise::cli::Record(record, std::cout, std::cerr);
}
