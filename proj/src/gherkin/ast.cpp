// Copyright 2026 The bdg Authors
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

#include "bdg/gherkin/ast.h"

namespace bdg::gherkin {

std::string_view keyword_name(StepKeyword keyword) {
  switch (keyword) {
    case StepKeyword::Given: return "Given";
    case StepKeyword::When: return "When";
    case StepKeyword::Then: return "Then";
    case StepKeyword::And: return "And";
    case StepKeyword::But: return "But";
  }
  return "?";
}

const Scenario* FeatureAst::find_scenario(std::string_view wanted) const {
  for (const auto& scenario : scenarios) {
    if (scenario.name == wanted) return &scenario;
  }
  return nullptr;
}

FeatureAst erase_spans(FeatureAst ast) {
  ast.span = {};
  for (auto& scenario : ast.scenarios) {
    scenario.span = {};
    for (auto& step : scenario.steps) step.span = {};
  }
  return ast;
}

bool is_valid_tag(std::string_view tag) {
  if (tag.size() < 2 || tag.front() != '@') return false;
  for (char c : tag.substr(1)) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == ':' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string_view tag_namespace(std::string_view tag) {
  if (!tag.empty() && tag.front() == '@') tag.remove_prefix(1);
  const auto colon = tag.find(':');
  if (colon == std::string_view::npos) return {};
  return tag.substr(0, colon);
}

std::string_view tag_value(std::string_view tag) {
  if (!tag.empty() && tag.front() == '@') tag.remove_prefix(1);
  const auto colon = tag.find(':');
  if (colon == std::string_view::npos) return tag;
  return tag.substr(colon + 1);
}

}  // namespace bdg::gherkin
