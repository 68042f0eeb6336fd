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

#include <string>
#include <string_view>
#include <vector>

#include "bdg/gherkin/ast.h"

namespace bdg::gherkin {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceSpan span;
};

namespace codes {
// Lexing and parsing.
inline constexpr std::string_view kIllegalCharacter = "GPE001";
inline constexpr std::string_view kMissingFeatureHeader = "GPE002";
inline constexpr std::string_view kEmptyScenario = "GPE003";
inline constexpr std::string_view kOrphanAndBut = "GPE004";
inline constexpr std::string_view kTableRaggedRows = "GPE005";
inline constexpr std::string_view kUnexpectedLine = "GPE006";
inline constexpr std::string_view kDuplicateScenario = "GPE007";
inline constexpr std::string_view kUnsupportedConstruct = "GPE008";
inline constexpr std::string_view kNoScenarios = "GPE009";
inline constexpr std::string_view kInvalidTag = "GPE010";
inline constexpr std::string_view kEmptyStepText = "GPE011";
inline constexpr std::string_view kDuplicateFeature = "GPE012";
inline constexpr std::string_view kMissingName = "GPE013";
inline constexpr std::string_view kMalformedTableRow = "GPE014";

// Lint.
inline constexpr std::string_view kNoThenStep = "GPD001";
inline constexpr std::string_view kStepOrder = "GPD002";
inline constexpr std::string_view kDuplicateStep = "GPD003";
inline constexpr std::string_view kUnknownTagNamespace = "GPD004";

// Binding.
inline constexpr std::string_view kUnboundStep = "GPB001";
inline constexpr std::string_view kAmbiguousStep = "GPB002";
inline constexpr std::string_view kMissingAssertion = "GPB003";
inline constexpr std::string_view kBadTagValue = "GPB004";
inline constexpr std::string_view kUnknownEnv = "GPB005";
inline constexpr std::string_view kUnknownTrainer = "GPB006";
inline constexpr std::string_view kStepRejected = "GPB007";
}  // namespace codes

Diagnostic make_error(std::string_view code, std::string message, SourceSpan span);
Diagnostic make_warning(std::string_view code, std::string message, SourceSpan span);

/// `file:line:col: severity[code] message`
std::string format_diagnostic(const Diagnostic& diagnostic);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace bdg::gherkin
