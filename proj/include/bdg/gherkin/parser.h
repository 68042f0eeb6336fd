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

#include "bdg/gherkin/ast.h"
#include "bdg/gherkin/diagnostic.h"

namespace bdg::gherkin {

/// Either an AST (possibly with warnings) or at least one Error diagnostic.
struct ParseResult {
  std::optional<FeatureAst> ast;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return ast.has_value(); }
};

/// Parses the supported Gherkin subset: Feature, Scenario, Given/When/Then/
/// And/But, tags, data tables and comments. After an error the parser skips
/// to the next `Scenario:` line so one run reports every broken scenario.
/// Never throws on malformed input.
ParseResult parse_feature(std::string_view source, std::string_view file = "");

/// Canonical rendering with 2-space indentation. Reparsing the output yields
/// the same AST up to spans.
std::string pretty_print(const FeatureAst& ast);

/// Semantic checks on a parsed feature. Never fails.
///   GPD001 scenario has no Then step (error)
///   GPD002 steps out of Given* When* Then+ order (error)
///   GPD003 duplicate step text within a scenario (warning)
///   GPD004 tag namespace not in {trainer, env, threshold} (warning)
std::vector<Diagnostic> lint(const FeatureAst& ast);

/// Compact human-readable dump used by `bdg parse` and the parser corpus.
std::string dump_summary(const FeatureAst& ast);

}  // namespace bdg::gherkin
