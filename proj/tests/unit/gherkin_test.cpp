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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "bdg/gherkin/lexer.h"
#include "bdg/gherkin/parser.h"

using namespace bdg::gherkin;

namespace {

constexpr const char* kFlappy =
    "Feature: F\n"
    " Scenario: S\n"
    "  When the first pipe is at the lowest position\n"
    "  And the second pipe is at the highest position\n"
    "  Then the bird passes 2 pipes\n";

std::vector<TokenKind> kinds(const std::vector<Token>& tokens) {
  std::vector<TokenKind> out;
  for (const auto& t : tokens) out.push_back(t.kind);
  return out;
}

std::vector<std::string> codes_of(const std::vector<Diagnostic>& diagnostics) {
  std::vector<std::string> out;
  for (const auto& d : diagnostics) out.push_back(d.code);
  return out;
}

}  // namespace

TEST(Lexer, EmptySourceHasNoTokens) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Lexer, FeatureLine) {
  const auto tokens = tokenize("Feature: F\n");
  ASSERT_EQ(kinds(tokens), (std::vector{TokenKind::KwFeature, TokenKind::Text}));
  EXPECT_EQ(tokens[1].text, "F");
  EXPECT_EQ(tokens[0].span.line, 1);
  EXPECT_EQ(tokens[0].span.column, 1);
}

TEST(Lexer, IndentedStep) {
  const auto tokens = tokenize("  When jump\n");
  ASSERT_EQ(kinds(tokens), (std::vector{TokenKind::KwWhen, TokenKind::Text}));
  EXPECT_EQ(tokens[1].text, "jump");
  EXPECT_EQ(tokens[0].span.column, 3);
  EXPECT_EQ(tokens[1].span.column, 8);
}

TEST(Lexer, CommentsAndBlankLinesAreSkipped) {
  const auto tokens = tokenize("# comment\n\n   \n  # another\nGiven x\n");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].span.line, 5);
}

TEST(Lexer, KeywordsOnlyAtLineStart) {
  const auto tokens = tokenize("Whenever it rains\nthe When x\n");
  ASSERT_EQ(kinds(tokens), (std::vector{TokenKind::Text, TokenKind::Text}));
}

TEST(Lexer, TagsAndTableRows) {
  const auto tokens = tokenize("@trainer:ppo @smoke # trailing\n| a | b\\|c |\n");
  ASSERT_EQ(kinds(tokens), (std::vector{TokenKind::Tag, TokenKind::Tag, TokenKind::TableRow}));
  EXPECT_EQ(tokens[1].text, "@smoke");
  EXPECT_EQ(tokens[2].cells, (std::vector<std::string>{"a", "b|c"}));
}

TEST(Lexer, IllegalCharacterCarriesSpan) {
  try {
    tokenize("Feature: F\n  Given a\x01 b\n");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.diagnostic().code, codes::kIllegalCharacter);
    EXPECT_EQ(e.diagnostic().span.line, 2);
    EXPECT_EQ(e.diagnostic().span.column, 10);
  }
  EXPECT_THROW(tokenize("Given \xC3\x28\n"), LexError);
  EXPECT_NO_THROW(tokenize("Given caf\xC3\xA9\n"));
}

TEST(Parser, FlappyLimitCase) {
  const auto result = parse_feature(kFlappy, "flappy.feature");
  ASSERT_TRUE(result.ok());
  const auto& ast = *result.ast;
  EXPECT_EQ(ast.name, "F");
  ASSERT_EQ(ast.scenarios.size(), 1u);
  const auto& steps = ast.scenarios[0].steps;
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_EQ(steps[1].keyword, StepKeyword::And);
  EXPECT_EQ(steps[1].resolved, StepKeyword::When);
  EXPECT_EQ(steps[1].text, "the second pipe is at the highest position");
  EXPECT_EQ(steps[2].resolved, StepKeyword::Then);
  EXPECT_EQ(steps[0].span.line, 3);
  EXPECT_EQ(steps[0].span.file, "flappy.feature");
}

TEST(Parser, MissingFeatureHeader) {
  const auto result = parse_feature("Scenario: S\n");
  ASSERT_FALSE(result.ok());
  ASSERT_FALSE(result.diagnostics.empty());
  EXPECT_EQ(result.diagnostics[0].code, codes::kMissingFeatureHeader);
  EXPECT_EQ(result.diagnostics[0].span.line, 1);
  EXPECT_EQ(result.diagnostics[0].span.column, 1);
}

TEST(Parser, OrphanAndBut) {
  const auto result = parse_feature("Feature: F\n Scenario: S\n  And x\n");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(codes_of(result.diagnostics), std::vector<std::string>{std::string(codes::kOrphanAndBut)});
}

TEST(Parser, EmptyScenarioAndRaggedTable) {
  auto result = parse_feature("Feature: F\n Scenario: A\n Scenario: B\n  Given t\n   | a | b |\n   | c |\n");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(codes_of(result.diagnostics),
            (std::vector<std::string>{std::string(codes::kEmptyScenario), std::string(codes::kTableRaggedRows)}));
  EXPECT_EQ(result.diagnostics[1].span.line, 6);
}

TEST(Parser, RecoversToNextScenario) {
  const auto result = parse_feature(
      "Feature: F\n"
      " Scenario: A\n  And a\n  Given b\n  junk\n"
      " Scenario: B\n  Given ok\n  stray text\n"
      " Scenario: C\n  But c\n");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(codes_of(result.diagnostics),
            (std::vector<std::string>{std::string(codes::kOrphanAndBut), std::string(codes::kUnexpectedLine),
                                      std::string(codes::kOrphanAndBut)}));
}

TEST(Parser, UnsupportedConstructs) {
  const auto result = parse_feature("Feature: F\n Background:\n  Given x\n Scenario: S\n  Then y\n");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.diagnostics[0].code, codes::kUnsupportedConstruct);
  EXPECT_FALSE(parse_feature("Feature: F\n Scenario Outline: S\n  Then y\n").ok());
  EXPECT_FALSE(parse_feature("Feature: F\n Scenario: S\n  Then y\n  \"\"\"\n  doc\n  \"\"\"\n").ok());
}

TEST(Parser, TagsAndDescription) {
  const auto result = parse_feature(
      "@env:flappy\nFeature: Pipes\n  Some words\n  more words\n\n  @trainer:ppo @threshold:0.9\n"
      "  Scenario: S\n    Given g\n    Then t\n      | k | v |\n      | 1 | 2 |\n");
  ASSERT_TRUE(result.ok()) << format_diagnostic(result.diagnostics.at(0));
  const auto& ast = *result.ast;
  EXPECT_EQ(ast.tags, std::vector<std::string>{"@env:flappy"});
  EXPECT_EQ(ast.description, "Some words\nmore words");
  EXPECT_EQ(ast.scenarios[0].tags, (std::vector<std::string>{"@trainer:ppo", "@threshold:0.9"}));
  ASSERT_TRUE(ast.scenarios[0].steps[1].table);
  EXPECT_EQ(ast.scenarios[0].steps[1].table->rows.size(), 2u);
}

TEST(Parser, DuplicateScenarioNames) {
  const auto result = parse_feature("Feature: F\n Scenario: S\n  Then a\n Scenario: S\n  Then b\n");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.diagnostics[0].code, codes::kDuplicateScenario);
}

TEST(Parser, DiagnosticFormat) {
  const auto result = parse_feature("Scenario: S\n", "a.feature");
  EXPECT_EQ(format_diagnostic(result.diagnostics[0]).rfind("a.feature:1:1: error[GPE002] ", 0), 0u);
}

TEST(PrettyPrint, StartsWithFeatureHeader) {
  const auto ast = parse_feature("Feature: F\n Scenario: S\n  Then t\n");
  EXPECT_EQ(pretty_print(*ast.ast).rfind("Feature: F", 0), 0u);
}

TEST(PrettyPrint, FlappyRoundTrip) {
  const auto first = parse_feature(kFlappy);
  const auto second = parse_feature(pretty_print(*first.ast));
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(erase_spans(*first.ast), erase_spans(*second.ast));
}

TEST(PrettyPrint, TableCellsAligned) {
  const auto ast = parse_feature("Feature: F\n Scenario: S\n  Given t\n  |a|bbb|\n  |cc|d|\n  Then x\n");
  const std::string printed = pretty_print(*ast.ast);
  EXPECT_NE(printed.find("      | a  | bbb |\n      | cc | d   |\n"), std::string::npos) << printed;
}

TEST(Lint, MissingThen) {
  const auto ast = parse_feature("Feature: F\n Scenario: S\n  When a\n  When b\n");
  EXPECT_EQ(codes_of(lint(*ast.ast)), std::vector<std::string>{std::string(codes::kNoThenStep)});
}

TEST(Lint, WellFormedFlappyIsClean) { EXPECT_TRUE(lint(*parse_feature(kFlappy).ast).empty()); }

TEST(Lint, ThenBeforeWhen) {
  const auto ast = parse_feature("Feature: F\n Scenario: S\n  Then a\n  When b\n");
  EXPECT_EQ(codes_of(lint(*ast.ast)), std::vector<std::string>{std::string(codes::kStepOrder)});
}

TEST(Lint, DuplicateStepsAndUnknownNamespaces) {
  const auto ast = parse_feature("@team:qa @smoke\nFeature: F\n Scenario: S\n  Then a\n  And a\n");
  const auto diags = lint(*ast.ast);
  EXPECT_EQ(codes_of(diags),
            (std::vector<std::string>{std::string(codes::kUnknownTagNamespace), std::string(codes::kDuplicateStep)}));
  EXPECT_FALSE(has_errors(diags));
}

// Property: parse(pretty_print(a)) == a (spans erased) for generated ASTs.
TEST(PrettyPrintProperty, RoundTripOnGeneratedAsts) {
  std::mt19937_64 rng(12345);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::vector<std::string> words{"bird", "pipe", "is", "at", "the", "lowest", "3", "\"quoted\"", "x:y",
                                       "caf\xC3\xA9", "#hash", "|bar|", "back\\slash", "@at"};
  auto phrase = [&](std::size_t min_words) {
    std::string s = std::string(1, static_cast<char>('a' + pick(26)));
    const std::size_t n = min_words + pick(5);
    for (std::size_t i = 0; i < n; ++i) s += ' ' + words[pick(words.size())];
    return s;
  };
  auto tags = [&] {
    std::vector<std::string> out;
    const std::vector<std::string> pool{"@smoke", "@env:flappy", "@trainer:ppo_default", "@threshold:0.9", "@a.b-c"};
    for (std::size_t i = pick(3); i > 0; --i) out.push_back(pool[pick(pool.size())]);
    return out;
  };
  for (int trial = 0; trial < 300; ++trial) {
    FeatureAst ast;
    ast.name = phrase(0);
    ast.tags = tags();
    if (pick(2)) ast.description = phrase(1) + (pick(2) ? "\n" + phrase(1) : "");
    const std::size_t n_scen = 1 + pick(4);
    for (std::size_t s = 0; s < n_scen; ++s) {
      Scenario scenario;
      scenario.name = "scenario " + std::to_string(s) + ' ' + phrase(0);
      scenario.tags = tags();
      StepKeyword last = StepKeyword::Given;
      const std::size_t n_steps = 1 + pick(5);
      for (std::size_t k = 0; k < n_steps; ++k) {
        Step step;
        const auto raw = static_cast<StepKeyword>(pick(k == 0 ? 3 : 5));
        step.keyword = raw;
        step.resolved = (raw == StepKeyword::And || raw == StepKeyword::But) ? last : raw;
        last = step.resolved;
        step.text = phrase(1);
        if (pick(4) == 0) {
          DataTable table;
          const std::size_t cols = 1 + pick(3);
          for (std::size_t r = 1 + pick(3); r > 0; --r) {
            auto& row = table.rows.emplace_back();
            for (std::size_t c = 0; c < cols; ++c) row.push_back(pick(5) == 0 ? "" : words[pick(words.size())]);
          }
          step.table = table;
        }
        scenario.steps.push_back(step);
      }
      ast.scenarios.push_back(scenario);
    }
    const std::string text = pretty_print(ast);
    const auto reparsed = parse_feature(text);
    ASSERT_TRUE(reparsed.ok()) << text << "\n" << format_diagnostic(reparsed.diagnostics.at(0));
    ASSERT_EQ(erase_spans(*reparsed.ast), erase_spans(ast)) << text;
  }
}

// Property: every byte string yields an AST or >=1 error, and error spans
// point at non-empty text inside the file.
TEST(ParserProperty, TotalAndSpansInsideFile) {
  std::mt19937_64 rng(777);
  const std::vector<std::string> fragments{"Feature: F\n", "Scenario: S\n", "  Given a\n", "  When b\n", "  Then c\n",
                                           "  And d\n",    "  But e\n",     "| x | y |\n", "| z |\n",     "@tag\n",
                                           "text\n",       "# c\n",         "\n",          "Background:\n", "\x01\n",
                                           "\xff\xfe\n",   "  Given\n",     "@bad!tag\n",  "| open\n",    "\"\"\"\n"};
  for (int trial = 0; trial < 2000; ++trial) {
    std::string source;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 10 == 0) {
        source.push_back(static_cast<char>(rng() % 256));
      } else {
        source += fragments[rng() % fragments.size()];
      }
    }
    const auto result = parse_feature(source);
    if (!result.ok()) {
      ASSERT_TRUE(has_errors(result.diagnostics));
      std::vector<std::size_t> line_starts{0};
      for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i] == '\n') line_starts.push_back(i + 1);
      }
      for (const auto& d : result.diagnostics) {
        ASSERT_GE(d.span.line, 1);
        ASSERT_LE(static_cast<std::size_t>(d.span.line), line_starts.size());
        const std::size_t begin = line_starts[d.span.line - 1] + d.span.column - 1;
        ASSERT_GT(d.span.length, 0) << format_diagnostic(d);
        ASSERT_LE(begin + d.span.length, source.size()) << format_diagnostic(d);
      }
    }
  }
}

TEST(ParserProperty, AndButResolutionIsAPrefixFold) {
  const auto ast = parse_feature(
      "Feature: F\n Scenario: S\n  Given a\n  And b\n  When c\n  But d\n  And e\n  Then f\n  But g\n");
  ASSERT_TRUE(ast.ok());
  std::vector<StepKeyword> resolved;
  for (const auto& s : ast.ast->scenarios[0].steps) resolved.push_back(s.resolved);
  EXPECT_EQ(resolved, (std::vector{StepKeyword::Given, StepKeyword::Given, StepKeyword::When, StepKeyword::When,
                                   StepKeyword::When, StepKeyword::Then, StepKeyword::Then}));
}
