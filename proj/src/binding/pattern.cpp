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

#include "bdg/binding/pattern.h"

#include <charconv>
#include <sstream>

namespace bdg::binding {

PatternError::PatternError(PatternErrc code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

std::string to_string(const StepArg& arg) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      std::ostringstream out;
      out.precision(17);
      out << v;
      return out.str();
    }
    std::string operator()(const Word& w) const { return w.value; }
    std::string operator()(const QuotedString& s) const { return '"' + s.value + '"'; }
  };
  return std::visit(Visitor{}, arg);
}

std::vector<PlaceholderType> StepPattern::placeholders() const {
  std::vector<PlaceholderType> out;
  for (const auto& segment : segments_) {
    if (const auto* p = std::get_if<PlaceholderType>(&segment)) out.push_back(*p);
  }
  return out;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

namespace {

std::string regex_escape(std::string_view literal) {
  static constexpr std::string_view kSpecial = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : literal) {
    if (kSpecial.find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view placeholder_regex(PlaceholderType type) {
  switch (type) {
    case PlaceholderType::Int: return R"((-?[0-9]+))";
    case PlaceholderType::Float: return R"((-?(?:[0-9]+(?:\.[0-9]+)?|\.[0-9]+)))";
    case PlaceholderType::Word: return R"((\S+))";
    case PlaceholderType::String: return R"lit("([^"]*)")lit";
  }
  return "";
}

}  // namespace

StepPattern compile_pattern(std::string_view text) {
  StepPattern pattern;
  pattern.source_ = normalize_whitespace(text);
  if (pattern.source_.empty()) throw PatternError(PatternErrc::EmptyPattern, "step pattern is empty");

  const std::string& src = pattern.source_;
  std::string literal;
  std::string regex;
  bool last_was_placeholder = false;
  std::size_t i = 0;
  while (i < src.size()) {
    if (src[i] == '{') {
      const auto close = src.find('}', i);
      if (close != std::string::npos) {
        const std::string_view name = std::string_view(src).substr(i + 1, close - i - 1);
        std::optional<PlaceholderType> type;
        if (name == "int") type = PlaceholderType::Int;
        if (name == "float") type = PlaceholderType::Float;
        if (name == "word") type = PlaceholderType::Word;
        if (name == "string") type = PlaceholderType::String;
        if (!type) {
          throw PatternError(PatternErrc::UnknownPlaceholderType,
                             "unknown placeholder {" + std::string(name) + "} in '" + src + "'");
        }
        if (last_was_placeholder && literal.empty()) {
          throw PatternError(PatternErrc::AdjacentPlaceholders,
                             "placeholders need a literal separator in '" + src + "'");
        }
        if (!literal.empty()) {
          regex += regex_escape(literal);
          pattern.segments_.emplace_back(std::exchange(literal, {}));
        }
        regex += placeholder_regex(*type);
        pattern.segments_.emplace_back(*type);
        last_was_placeholder = true;
        i = close + 1;
        continue;
      }
    }
    literal.push_back(src[i]);
    ++i;
  }
  if (!literal.empty()) {
    regex += regex_escape(literal);
    pattern.segments_.emplace_back(std::move(literal));
  }
  pattern.matcher_ = std::regex(regex, std::regex::ECMAScript);
  return pattern;
}

std::optional<std::vector<StepArg>> match_step(const StepPattern& pattern, std::string_view text) {
  const std::string normalized = normalize_whitespace(text);
  std::smatch match;
  if (!std::regex_match(normalized, match, pattern.matcher_)) return std::nullopt;

  std::vector<StepArg> args;
  std::size_t group = 1;
  for (const auto& segment : pattern.segments_) {
    const auto* type = std::get_if<PlaceholderType>(&segment);
    if (!type) continue;
    const std::string captured = match[group++].str();
    switch (*type) {
      case PlaceholderType::Int: {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(captured.data(), captured.data() + captured.size(), value);
        if (ec != std::errc() || ptr != captured.data() + captured.size()) return std::nullopt;
        args.emplace_back(value);
        break;
      }
      case PlaceholderType::Float: {
        double value = 0;
        const auto [ptr, ec] = std::from_chars(captured.data(), captured.data() + captured.size(), value);
        if (ec != std::errc() || ptr != captured.data() + captured.size()) return std::nullopt;
        args.emplace_back(value);
        break;
      }
      case PlaceholderType::Word: args.emplace_back(Word{captured}); break;
      case PlaceholderType::String: args.emplace_back(QuotedString{captured}); break;
    }
  }
  return args;
}

}  // namespace bdg::binding
