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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bdg::gherkin {

/// Location of a construct in a feature file. Columns count bytes.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;

  bool operator==(const SourceSpan&) const = default;
};

enum class StepKeyword { Given, When, Then, And, But };

std::string_view keyword_name(StepKeyword keyword);

struct DataTable {
  std::vector<std::vector<std::string>> rows;

  std::size_t column_count() const { return rows.empty() ? 0 : rows.front().size(); }
  bool operator==(const DataTable&) const = default;
};

/// A step keeps the keyword as written (for printing) and the keyword it
/// resolves to once And/But are folded onto the preceding step.
struct Step {
  StepKeyword keyword = StepKeyword::Given;
  StepKeyword resolved = StepKeyword::Given;
  std::string text;
  std::optional<DataTable> table;
  SourceSpan span;

  bool operator==(const Step&) const = default;
};

struct Scenario {
  std::string name;
  std::vector<std::string> tags;
  std::vector<Step> steps;
  SourceSpan span;

  bool operator==(const Scenario&) const = default;
};

struct FeatureAst {
  std::string name;
  std::optional<std::string> description;
  std::vector<std::string> tags;
  std::vector<Scenario> scenarios;
  SourceSpan span;

  bool operator==(const FeatureAst&) const = default;

  const Scenario* find_scenario(std::string_view name) const;
};

/// Returns a copy with every span reset to a default value, for structural
/// comparison of ASTs parsed from different texts.
FeatureAst erase_spans(FeatureAst ast);

/// Tag syntax: '@' followed by one or more of [A-Za-z0-9_:.-].
bool is_valid_tag(std::string_view tag);

/// Namespace of a tag ("trainer" for "@trainer:ppo"), empty when the tag has
/// no colon.
std::string_view tag_namespace(std::string_view tag);
std::string_view tag_value(std::string_view tag);

}  // namespace bdg::gherkin
