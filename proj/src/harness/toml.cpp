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

#include "bdg/harness/toml.h"

#include <charconv>
#include <set>

namespace bdg::harness {

const TomlValue* TomlTable::find(std::string_view key) const {
  for (const auto& [k, v] : items) {
    if (k == key) return &v;
  }
  return nullptr;
}

TomlValue* TomlTable::find(std::string_view key) {
  for (auto& [k, v] : items) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::optional<double> TomlValue::number() const {
  if (const auto* i = integer()) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&data)) return *d;
  return std::nullopt;
}

std::string_view TomlValue::type_name() const {
  static constexpr std::string_view kNames[] = {"boolean", "integer", "float", "string", "array", "table"};
  return kNames[data.index()];
}

TomlError::TomlError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

bool is_bare_key_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TomlTable run() {
    TomlTable root;
    TomlTable* current = &root;
    for (;;) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        current = header(root);
      } else {
        keyval(*current);
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw TomlError(line_, column_, message); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void skip_spaces() {
    while (peek() == ' ' || peek() == '\t') advance();
  }

  void skip_comment() {
    if (peek() != '#') return;
    while (!at_end() && peek() != '\n') advance();
  }

  void skip_blank_lines() {
    for (;;) {
      skip_spaces();
      skip_comment();
      if (peek() == '\r' && peek(1) == '\n') advance();
      if (peek() != '\n') return;
      advance();
    }
  }

  // Whitespace, comments and newlines, as allowed inside arrays.
  void skip_array_space() { skip_blank_lines(); }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') advance();
    if (at_end()) return;
    if (peek() != '\n') fail("expected end of line");
    advance();
  }

  std::string key_part() {
    if (peek() == '"') return basic_string();
    if (peek() == '\'') return literal_string();
    std::string out;
    while (is_bare_key_char(peek())) out.push_back(advance());
    if (out.empty()) fail("expected a key");
    return out;
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts;
    for (;;) {
      skip_spaces();
      parts.push_back(key_part());
      skip_spaces();
      if (peek() != '.') return parts;
      advance();
    }
  }

  // Walks or creates intermediate tables for a dotted key.
  TomlTable* descend(TomlTable* table, const std::vector<std::string>& path, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      auto* next = table->find(path[i]);
      if (next == nullptr) {
        table->items.emplace_back(path[i], TomlValue{TomlTable{}});
        next = &table->items.back().second;
      }
      auto* nested = std::get_if<TomlTable>(&next->data);
      if (nested == nullptr) fail("key '" + path[i] + "' is not a table");
      table = nested;
    }
    return table;
  }

  TomlTable* header(TomlTable& root) {
    advance();
    if (peek() == '[') fail("arrays of tables are not supported");
    const auto path = dotted_key();
    expect(']');
    std::string joined;
    for (const auto& p : path) joined += (joined.empty() ? "" : ".") + p;
    if (!defined_headers_.insert(joined).second) fail("table [" + joined + "] defined twice");
    return descend(&root, path, path.size());
  }

  void keyval(TomlTable& table) {
    const auto path = dotted_key();
    expect('=');
    skip_spaces();
    TomlValue v = value();
    auto* target = descend(&table, path, path.size() - 1);
    if (target->find(path.back()) != nullptr) fail("key '" + path.back() + "' defined twice");
    target->items.emplace_back(path.back(), std::move(v));
  }

  TomlValue value() {
    const char c = peek();
    if (c == '"') return {basic_string()};
    if (c == '\'') return {literal_string()};
    if (c == '[') return array();
    if (c == '{') return inline_table();
    if (text_.substr(pos_, 4) == "true" && !is_bare_key_char(peek(4))) {
      for (int i = 0; i < 4; ++i) advance();
      return {true};
    }
    if (text_.substr(pos_, 5) == "false" && !is_bare_key_char(peek(5))) {
      for (int i = 0; i < 5; ++i) advance();
      return {false};
    }
    return number();
  }

  TomlValue number() {
    std::string digits;
    bool is_float = false;
    while (!at_end()) {
      const char c = peek();
      if ((c >= '0' && c <= '9') || c == '+' || c == '-') {
        digits.push_back(c);
      } else if (c == '.' || c == 'e' || c == 'E') {
        is_float = true;
        digits.push_back(c);
      } else if (c != '_') {
        break;
      }
      advance();
    }
    if (digits.empty()) fail("expected a value");
    const char* first = digits.data() + (digits.front() == '+' ? 1 : 0);
    const char* last = digits.data() + digits.size();
    if (is_float) {
      double d = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, d);
      if (ec != std::errc() || ptr != last) fail("malformed float '" + digits + "'");
      return {d};
    }
    std::int64_t i = 0;
    const auto [ptr, ec] = std::from_chars(first, last, i);
    if (ec == std::errc::result_out_of_range) fail("integer '" + digits + "' out of range");
    if (ec != std::errc() || ptr != last) fail("malformed integer '" + digits + "'");
    return {i};
  }

  std::string basic_string() {
    advance();
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = advance();
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      const char e = at_end() ? '\0' : advance();
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'u':
        case 'U': {
          const int width = e == 'u' ? 4 : 8;
          std::uint32_t cp = 0;
          const auto hex = text_.substr(pos_, width);
          const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
          if (hex.size() != static_cast<std::size_t>(width) || ec != std::errc() || ptr != hex.data() + hex.size() ||
              cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            fail("bad unicode escape");
          }
          for (int i = 0; i < width; ++i) advance();
          append_utf8(out, cp);
          break;
        }
        default: fail(std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  std::string literal_string() {
    advance();
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = advance();
      if (c == '\'') return out;
      out.push_back(c);
    }
  }

  TomlValue array() {
    advance();
    TomlArray out;
    for (;;) {
      skip_array_space();
      if (peek() == ']') break;
      out.push_back(value());
      skip_array_space();
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() != ']') fail("expected ',' or ']' in array");
    }
    advance();
    return {std::move(out)};
  }

  TomlValue inline_table() {
    advance();
    TomlTable out;
    skip_spaces();
    if (peek() == '}') {
      advance();
      return {std::move(out)};
    }
    for (;;) {
      keyval(out);
      skip_spaces();
      if (peek() == ',') {
        advance();
        skip_spaces();
        continue;
      }
      expect('}');
      return {std::move(out)};
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::set<std::string> defined_headers_;
};

}  // namespace

TomlTable parse_toml(std::string_view text) { return Parser(text).run(); }

}  // namespace bdg::harness
