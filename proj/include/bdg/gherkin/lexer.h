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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bdg/gherkin/ast.h"
#include "bdg/gherkin/diagnostic.h"

namespace bdg::gherkin {

enum class TokenKind {
  KwFeature,
  KwScenario,
  KwGiven,
  KwWhen,
  KwThen,
  KwAnd,
  KwBut,
  // Background, Scenario Outline, Examples, Rule and doc-string fences.
  KwUnsupported,
  Text,
  Tag,
  TableRow,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Text;
  std::string text;
  // Cell values for TableRow, unescaped and trimmed.
  std::vector<std::string> cells;
  SourceSpan span;

  bool operator==(const Token&) const = default;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
};

/// Line-oriented lexer. Comment lines and blank lines produce no tokens; a
/// line that contains an illegal byte produces a diagnostic and no tokens.
LexResult lex(std::string_view source, std::string_view file = "");

class LexError : public std::runtime_error {
 public:
  explicit LexError(Diagnostic diagnostic);
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// Strict variant of lex(): throws LexError on the first illegal character.
std::vector<Token> tokenize(std::string_view source, std::string_view file = "");

}  // namespace bdg::gherkin
