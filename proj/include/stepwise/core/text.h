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

#ifndef STEPWISE_CORE_TEXT_H_
#define STEPWISE_CORE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace stepwise {

// Sentences end at `.`, `!` or `?` outside backticks; a period between two
// digits does not end one. A trailing unterminated fragment is a sentence.
std::vector<std::string> SplitSentences(std::string_view text);

int CountWords(std::string_view text);

std::string Trim(std::string_view s);
std::vector<std::string> SplitLines(std::string_view text);

}  // namespace stepwise

#endif  // STEPWISE_CORE_TEXT_H_
