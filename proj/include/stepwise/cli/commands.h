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

#ifndef STEPWISE_CLI_COMMANDS_H_
#define STEPWISE_CLI_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

#include "stepwise/llm/gateway.h"

namespace stepwise::cli {

enum ExitCode : int {
  kOk = 0,
  kViolations = 1,
  kUsage = 2,
  kEnvironment = 3,
};

struct ProviderFlags {
  std::string mode = "replay";
  std::filesystem::path fixtures;
  std::string endpoint;
  std::string model;
  std::string token_env = "STEPWISE_LLM_TOKEN";
  double timeout_seconds = 60;
};

struct ServeOptions {
  std::filesystem::path task_pack;
  std::filesystem::path data_dir = "stepwise-data";
  std::string host = "127.0.0.1";
  int port = 8077;
  std::string cors_origin = "*";
  ProviderFlags provider;
};

struct EvalOptions {
  std::filesystem::path task_pack;
  std::filesystem::path snapshots;
  std::filesystem::path fixtures;
  std::filesystem::path out;
};

struct RecordOptions {
  std::filesystem::path task_pack;
  std::filesystem::path snapshots;
  std::filesystem::path out;
  ProviderFlags provider;
};

// `transport` replaces the HTTP transport when set (tests).
int Serve(const ServeOptions& options, std::ostream& out, std::ostream& err);
int Eval(const EvalOptions& options, std::ostream& out, std::ostream& err,
         std::shared_ptr<llm::Transport> transport = nullptr);
int Record(const RecordOptions& options, std::ostream& out, std::ostream& err,
           std::shared_ptr<llm::Transport> transport = nullptr);

}  // namespace stepwise::cli

#endif  // STEPWISE_CLI_COMMANDS_H_
