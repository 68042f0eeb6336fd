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

#include "bdg/gherkin/lexer.h"

#include <array>
#include <utility>

#include "text.h"

namespace bdg::gherkin {
namespace {

struct KeywordEntry {
  std::string_view spelling;
  TokenKind kind;
  bool needs_colon;
};

// Longer spellings first so "Scenario Outline:" is not read as "Scenario".
constexpr std::array<KeywordEntry, 14> kKeywords{{
    {"Scenario Outline:", TokenKind::KwUnsupported, true},
    {"Scenario Template:", TokenKind::KwUnsupported, true},
    {"Background:", TokenKind::KwUnsupported, true},
    {"Examples:", TokenKind::KwUnsupported, true},
    {"Scenarios:", TokenKind::KwUnsupported, true},
    {"Example:", TokenKind::KwUnsupported, true},
    {"Rule:", TokenKind::KwUnsupported, true},
    {"Feature:", TokenKind::KwFeature, true},
    {"Scenario:", TokenKind::KwScenario, true},
    {"Given", TokenKind::KwGiven, false},
    {"When", TokenKind::KwWhen, false},
    {"Then", TokenKind::KwThen, false},
    {"And", TokenKind::KwAnd, false},
    {"But", TokenKind::KwBut, false},
}};

SourceSpan span_at(std::string_view file, int line, std::size_t offset, std::size_t length) {
  return SourceSpan{std::string(file), line, static_cast<int>(offset) + 1, static_cast<int>(length)};
}

// Returns the offset and byte length of the first illegal sequence, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_illegal(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size()) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c < 0x80) {
      if ((c < 0x20 && c != '\t') || c == 0x7f) return std::pair{i, std::size_t{1}};
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return std::pair{i, std::size_t{1}};
    }
    if (i + len > line.size()) return std::pair{i, line.size() - i};
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(line[i + k]);
      if ((cc & 0xC0) != 0x80) return std::pair{i, k};
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::pair{i, len};
    i += len;
  }
  return std::nullopt;
}

// Splits "| a | b \| c |" into unescaped, trimmed cells. Returns false when
// the row is not closed by an unescaped pipe.
bool split_cells(std::string_view row, std::vector<std::string>& cells) {
  cells.clear();
  std::string current;
  bool closed = false;
  // row[0] is the opening pipe.
  for (std::size_t i = 1; i < row.size(); ++i) {
    const char c = row[i];
    if (c == '\\' && i + 1 < row.size() && (row[i + 1] == '|' || row[i + 1] == '\\')) {
      current.push_back(row[i + 1]);
      closed = false;
      ++i;
      continue;
    }
    if (c == '|') {
      cells.emplace_back(trim(current));
      current.clear();
      closed = true;
      continue;
    }
    current.push_back(c);
    if (c != ' ' && c != '\t') closed = false;
  }
  return closed;
}

void lex_line(std::string_view line, int line_no, std::string_view file, LexResult& out,
              std::size_t indent = 0) {
  if (auto bad = find_illegal(line.substr(indent))) {
    bad->first += indent;
    out.diagnostics.push_back(make_error(codes::kIllegalCharacter, "illegal character in input",
                                         span_at(file, line_no, bad->first, bad->second)));
    return;
  }
  while (indent < line.size() && (line[indent] == ' ' || line[indent] == '\t')) ++indent;
  const std::string_view body = line.substr(indent);
  const std::string_view content = trim(body);
  if (content.empty() || content.front() == '#') return;

  if (content.front() == '@') {
    std::size_t pos = 0;
    while (pos < body.size()) {
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos >= body.size() || body[pos] == '#') break;
      std::size_t end = pos;
      while (end < body.size() && body[end] != ' ' && body[end] != '\t') ++end;
      const std::string_view tag = body.substr(pos, end - pos);
      const SourceSpan span = span_at(file, line_no, indent + pos, tag.size());
      if (is_valid_tag(tag)) {
        out.tokens.push_back(Token{TokenKind::Tag, std::string(tag), {}, span});
      } else {
        out.diagnostics.push_back(
            make_error(codes::kInvalidTag, "invalid tag '" + std::string(tag) + "'", span));
      }
      pos = end;
    }
    return;
  }

  if (content.front() == '|') {
    Token token{TokenKind::TableRow, std::string(content), {}, span_at(file, line_no, indent, content.size())};
    if (!split_cells(content, token.cells)) {
      out.diagnostics.push_back(
          make_error(codes::kMalformedTableRow, "table row must end with '|'", token.span));
      return;
    }
    out.tokens.push_back(std::move(token));
    return;
  }

  if (content.starts_with("\"\"\"") || content.starts_with("```")) {
    out.tokens.push_back(Token{TokenKind::KwUnsupported, std::string(content.substr(0, 3)), {},
                               span_at(file, line_no, indent, 3)});
    return;
  }

  for (const auto& kw : kKeywords) {
    if (!body.starts_with(kw.spelling)) continue;
    const std::string_view rest = body.substr(kw.spelling.size());
    if (!kw.needs_colon && !rest.empty() && rest.front() != ' ' && rest.front() != '\t') continue;
    out.tokens.push_back(Token{kw.kind, std::string(kw.spelling), {},
                               span_at(file, line_no, indent, kw.spelling.size())});
    const std::string_view text = trim(rest);
    if (!text.empty()) {
      const std::size_t text_offset = indent + kw.spelling.size() + (rest.size() - trim_left(rest).size());
      out.tokens.push_back(
          Token{TokenKind::Text, std::string(text), {}, span_at(file, line_no, text_offset, text.size())});
    }
    return;
  }

  out.tokens.push_back(Token{TokenKind::Text, std::string(content), {},
                             span_at(file, line_no, indent, content.size())});
}

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::KwFeature: return "KwFeature";
    case TokenKind::KwScenario: return "KwScenario";
    case TokenKind::KwGiven: return "KwGiven";
    case TokenKind::KwWhen: return "KwWhen";
    case TokenKind::KwThen: return "KwThen";
    case TokenKind::KwAnd: return "KwAnd";
    case TokenKind::KwBut: return "KwBut";
    case TokenKind::KwUnsupported: return "KwUnsupported";
    case TokenKind::Text: return "Text";
    case TokenKind::Tag: return "Tag";
    case TokenKind::TableRow: return "TableRow";
  }
  return "?";
}

LexResult lex(std::string_view source, std::string_view file) {
  LexResult out;
  int line_no = 1;
  std::size_t start = 0;
  while (start < source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    // A leading byte-order mark is skipped like indentation.
    const std::size_t bom = (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) ? 3 : 0;
    lex_line(line, line_no, file, out, bom);
    start = end + 1;
    ++line_no;
  }
  return out;
}

LexError::LexError(Diagnostic diagnostic)
    : std::runtime_error(format_diagnostic(diagnostic)), diagnostic_(std::move(diagnostic)) {}

std::vector<Token> tokenize(std::string_view source, std::string_view file) {
  LexResult result = lex(source, file);
  for (auto& d : result.diagnostics) {
    if (d.code == codes::kIllegalCharacter) throw LexError(std::move(d));
  }
  return std::move(result.tokens);
}

}  // namespace bdg::gherkin
