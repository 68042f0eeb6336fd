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

#include "bdg/gherkin/parser.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "bdg/gherkin/lexer.h"
#include "text.h"

namespace bdg::gherkin {
namespace {

struct Line {
  std::vector<const Token*> tokens;

  const Token& head() const { return *tokens.front(); }
  std::string text() const {
    return tokens.size() > 1 && tokens[1]->kind == TokenKind::Text ? tokens[1]->text : std::string();
  }
};

std::vector<Line> group_lines(const std::vector<Token>& tokens) {
  std::vector<Line> lines;
  int current = -1;
  for (const auto& token : tokens) {
    if (token.span.line != current) {
      lines.emplace_back();
      current = token.span.line;
    }
    lines.back().tokens.push_back(&token);
  }
  return lines;
}

std::optional<StepKeyword> step_keyword(TokenKind kind) {
  switch (kind) {
    case TokenKind::KwGiven: return StepKeyword::Given;
    case TokenKind::KwWhen: return StepKeyword::When;
    case TokenKind::KwThen: return StepKeyword::Then;
    case TokenKind::KwAnd: return StepKeyword::And;
    case TokenKind::KwBut: return StepKeyword::But;
    default: return std::nullopt;
  }
}

// Span of the first non-blank byte run in the file, used when an error has
// no better anchor (for example an empty feature file).
SourceSpan first_content_span(std::string_view source, std::string_view file) {
  int line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const char c = source[i];
    if (c == '\n') {
      ++line;
      line_start = i + 1;
      continue;
    }
    if (is_blank(c)) continue;
    std::size_t end = source.find('\n', i);
    if (end == std::string_view::npos) end = source.size();
    const auto content = trim(source.substr(i, end - i));
    return SourceSpan{std::string(file), line, static_cast<int>(i - line_start) + 1,
                      static_cast<int>(content.size())};
  }
  return SourceSpan{std::string(file), 1, 1, source.empty() ? 0 : 1};
}

class Parser {
 public:
  Parser(std::string_view source, std::string_view file) : source_(source), file_(file) {}

  ParseResult run() {
    LexResult lexed = lex(source_, file_);
    diagnostics_ = std::move(lexed.diagnostics);
    for (const auto& line : group_lines(lexed.tokens)) {
      if (recovering_ && line.head().kind != TokenKind::KwScenario && line.head().kind != TokenKind::Tag) {
        continue;
      }
      handle(line);
    }
    finish_scenario();
    if (!pending_tags_.empty()) {
      error(codes::kUnexpectedLine, "tags must be followed by Feature: or Scenario:", pending_tag_span_);
    }
    if (!feature_) {
      if (!missing_header_reported_) {
        error(codes::kMissingFeatureHeader, "missing 'Feature:' header", first_content_span(source_, file_));
      }
    } else if (feature_->scenarios.empty() && !saw_scenario_) {
      error(codes::kNoScenarios, "feature has no scenarios", feature_->span);
    }

    std::stable_sort(diagnostics_.begin(), diagnostics_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.span.line, a.span.column) < std::tie(b.span.line, b.span.column);
    });
    ParseResult result;
    if (!has_errors(diagnostics_)) {
      if (!description_.empty()) feature_->description = description_;
      result.ast = std::move(feature_);
    }
    result.diagnostics = std::move(diagnostics_);
    return result;
  }

 private:
  enum class Last { None, Feature, Description, Scenario, Step, Table, Tags };

  void error(std::string_view code, std::string message, const SourceSpan& span) {
    diagnostics_.push_back(make_error(code, std::move(message), span));
  }

  void fail(std::string_view code, std::string message, const SourceSpan& span) {
    error(code, std::move(message), span);
    scenario_had_error_ = true;
    recovering_ = true;
  }

  bool require_header(const Token& head) {
    if (feature_) return true;
    scenario_had_error_ = true;
    if (!missing_header_reported_) {
      error(codes::kMissingFeatureHeader, "missing 'Feature:' header before this line", head.span);
      missing_header_reported_ = true;
    }
    return false;
  }

  void handle(const Line& line) {
    const Token& head = line.head();
    switch (head.kind) {
      case TokenKind::Tag:
        if (pending_tags_.empty()) pending_tag_span_ = head.span;
        for (const Token* t : line.tokens) pending_tags_.push_back(t->text);
        last_ = Last::Tags;
        return;
      case TokenKind::KwFeature:
        on_feature(line);
        return;
      case TokenKind::KwScenario:
        on_scenario(line);
        return;
      case TokenKind::Text:
        on_text(line);
        return;
      case TokenKind::TableRow:
        on_table_row(head);
        return;
      case TokenKind::KwUnsupported:
        fail(codes::kUnsupportedConstruct, "'" + head.text + "' is not supported", head.span);
        return;
      default:
        on_step(line);
        return;
    }
  }

  void on_feature(const Line& line) {
    const Token& head = line.head();
    if (feature_ || saw_scenario_) {
      fail(codes::kDuplicateFeature, "only one Feature: per file is allowed", head.span);
      return;
    }
    FeatureAst feature;
    feature.name = line.text();
    feature.tags = std::exchange(pending_tags_, {});
    feature.span = head.span;
    if (feature.name.empty()) error(codes::kMissingName, "feature needs a name", head.span);
    feature_ = std::move(feature);
    last_ = Last::Feature;
  }

  void on_scenario(const Line& line) {
    const Token& head = line.head();
    finish_scenario();
    recovering_ = false;
    scenario_had_error_ = false;
    saw_scenario_ = true;
    require_header(head);
    Scenario scenario;
    scenario.name = line.text();
    scenario.tags = std::exchange(pending_tags_, {});
    scenario.span = head.span;
    if (scenario.name.empty()) {
      error(codes::kMissingName, "scenario needs a name", head.span);
    } else if (!scenario_names_.insert(scenario.name).second) {
      error(codes::kDuplicateScenario, "duplicate scenario name '" + scenario.name + "'", head.span);
    }
    current_ = std::move(scenario);
    last_ = Last::Scenario;
  }

  void on_text(const Line& line) {
    const Token& head = line.head();
    if (!require_header(head)) {
      recovering_ = true;
      return;
    }
    if (!current_ && pending_tags_.empty() && (last_ == Last::Feature || last_ == Last::Description)) {
      if (!description_.empty()) description_ += '\n';
      description_ += head.text;
      last_ = Last::Description;
      return;
    }
    fail(codes::kUnexpectedLine, "unexpected text; expected a step keyword", head.span);
  }

  void on_step(const Line& line) {
    const Token& head = line.head();
    if (!require_header(head)) {
      recovering_ = true;
      return;
    }
    if (!current_) {
      fail(codes::kUnexpectedLine, "step outside of a scenario", head.span);
      return;
    }
    if (!pending_tags_.empty()) {
      error(codes::kUnexpectedLine, "tags must be followed by Feature: or Scenario:", pending_tag_span_);
      pending_tags_.clear();
    }
    Step step;
    step.keyword = *step_keyword(head.kind);
    step.text = line.text();
    step.span = head.span;
    if (step.text.empty()) {
      fail(codes::kEmptyStepText, "step '" + head.text + "' has no text", head.span);
      return;
    }
    if (step.keyword == StepKeyword::And || step.keyword == StepKeyword::But) {
      if (current_->steps.empty()) {
        fail(codes::kOrphanAndBut, "'" + head.text + "' cannot start a scenario", head.span);
        return;
      }
      step.resolved = current_->steps.back().resolved;
    } else {
      step.resolved = step.keyword;
    }
    step.span.length = static_cast<int>(line.tokens.back()->span.column + line.tokens.back()->span.length -
                                        head.span.column);
    current_->steps.push_back(std::move(step));
    last_ = Last::Step;
  }

  void on_table_row(const Token& row) {
    if (last_ != Last::Step && last_ != Last::Table) {
      fail(codes::kUnexpectedLine, "table row must follow a step", row.span);
      return;
    }
    auto& step = current_->steps.back();
    if (!step.table) {
      step.table = DataTable{{row.cells}};
    } else if (row.cells.size() != step.table->column_count()) {
      fail(codes::kTableRaggedRows,
           "table row has " + std::to_string(row.cells.size()) + " cells, expected " +
               std::to_string(step.table->column_count()),
           row.span);
      return;
    } else {
      step.table->rows.push_back(row.cells);
    }
    last_ = Last::Table;
  }

  void finish_scenario() {
    if (!current_) return;
    if (current_->steps.empty() && !scenario_had_error_) {
      error(codes::kEmptyScenario, "scenario '" + current_->name + "' has no steps", current_->span);
    }
    if (feature_) feature_->scenarios.push_back(std::move(*current_));
    current_.reset();
  }

  std::string_view source_;
  std::string_view file_;
  std::vector<Diagnostic> diagnostics_;
  std::optional<FeatureAst> feature_;
  std::optional<Scenario> current_;
  std::string description_;
  std::vector<std::string> pending_tags_;
  SourceSpan pending_tag_span_;
  std::set<std::string> scenario_names_;
  Last last_ = Last::None;
  bool recovering_ = false;
  bool scenario_had_error_ = false;
  bool missing_header_reported_ = false;
  bool saw_scenario_ = false;
};

std::string escape_cell(std::string_view cell) {
  std::string out;
  for (char c : cell) {
    if (c == '|' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void print_tags(std::string& out, const std::vector<std::string>& tags, std::string_view indent) {
  if (tags.empty()) return;
  out += indent;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i) out += ' ';
    out += tags[i];
  }
  out += '\n';
}

void print_table(std::string& out, const DataTable& table) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> widths(table.column_count(), 0);
  for (const auto& row : table.rows) {
    auto& escaped = cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      escaped.push_back(escape_cell(row[c]));
      widths[c] = std::max(widths[c], escaped.back().size());
    }
  }
  for (const auto& row : cells) {
    out += "      |";
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += ' ' + row[c] + std::string(widths[c] - row[c].size(), ' ') + " |";
    }
    out += '\n';
  }
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + '"';
}

std::string tag_list(const std::vector<std::string>& tags) {
  std::string out = "[";
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i) out += ' ';
    out += tags[i];
  }
  return out + ']';
}

}  // namespace

ParseResult parse_feature(std::string_view source, std::string_view file) {
  return Parser(source, file).run();
}

std::string pretty_print(const FeatureAst& ast) {
  std::string out;
  print_tags(out, ast.tags, "");
  out += "Feature: " + ast.name + '\n';
  if (ast.description) {
    std::string_view rest = *ast.description;
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      out += "  ";
      out += rest.substr(0, nl);
      out += '\n';
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  for (const auto& scenario : ast.scenarios) {
    out += '\n';
    print_tags(out, scenario.tags, "  ");
    out += "  Scenario: " + scenario.name + '\n';
    for (const auto& step : scenario.steps) {
      out += "    ";
      out += keyword_name(step.keyword);
      out += ' ' + step.text + '\n';
      if (step.table) print_table(out, *step.table);
    }
  }
  return out;
}

std::vector<Diagnostic> lint(const FeatureAst& ast) {
  static const std::set<std::string_view> kKnownNamespaces{"trainer", "env", "threshold"};
  std::vector<Diagnostic> out;
  auto check_tags = [&](const std::vector<std::string>& tags, const SourceSpan& span) {
    for (const auto& tag : tags) {
      const auto ns = tag_namespace(tag);
      if (!ns.empty() && !kKnownNamespaces.contains(ns)) {
        out.push_back(make_warning(codes::kUnknownTagNamespace,
                                   "unknown tag namespace '" + std::string(ns) + "' in " + tag, span));
      }
    }
  };
  check_tags(ast.tags, ast.span);
  for (const auto& scenario : ast.scenarios) {
    check_tags(scenario.tags, scenario.span);
    bool has_then = false;
    int phase = 0;
    std::set<std::string_view> seen;
    for (const auto& step : scenario.steps) {
      const int rank = step.resolved == StepKeyword::Given ? 0 : step.resolved == StepKeyword::When ? 1 : 2;
      if (rank < phase) {
        out.push_back(make_error(codes::kStepOrder,
                                 std::string(keyword_name(step.resolved)) + " step after " +
                                     (phase == 2 ? "Then" : "When") + "; expected Given* When* Then+",
                                 step.span));
      }
      phase = std::max(phase, rank);
      has_then = has_then || rank == 2;
      if (!seen.insert(step.text).second) {
        out.push_back(make_warning(codes::kDuplicateStep, "duplicate step '" + step.text + "'", step.span));
      }
    }
    if (!has_then) {
      out.push_back(make_error(codes::kNoThenStep,
                               "scenario '" + scenario.name + "' has no Then step to assert", scenario.span));
    }
  }
  return out;
}

std::string dump_summary(const FeatureAst& ast) {
  std::string out = "feature " + quoted(ast.name) + " tags=" + tag_list(ast.tags) + '\n';
  if (ast.description) out += "  description " + quoted(*ast.description) + '\n';
  for (const auto& scenario : ast.scenarios) {
    out += "  scenario " + quoted(scenario.name) + " tags=" + tag_list(scenario.tags) +
           " line=" + std::to_string(scenario.span.line) + '\n';
    for (const auto& step : scenario.steps) {
      out += "    ";
      out += keyword_name(step.resolved);
      if (step.keyword != step.resolved) {
        out += '<';
        out += keyword_name(step.keyword);
      }
      out += ' ' + quoted(step.text) + " line=" + std::to_string(step.span.line) + '\n';
      if (step.table) {
        for (const auto& row : step.table->rows) {
          out += "      |";
          for (const auto& cell : row) out += ' ' + quoted(cell) + " |";
          out += '\n';
        }
      }
    }
  }
  return out;
}

}  // namespace bdg::gherkin
