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

#include <cstdint>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bdg::binding {

enum class PlaceholderType { Int, Float, Word, String };

struct Word {
  std::string value;
  bool operator==(const Word&) const = default;
};

struct QuotedString {
  std::string value;
  bool operator==(const QuotedString&) const = default;
};

/// A value captured by a placeholder; the alternative always matches the
/// placeholder type ({int} -> int64, {float} -> double, ...).
using StepArg = std::variant<std::int64_t, double, Word, QuotedString>;

std::string to_string(const StepArg& arg);

enum class PatternErrc { EmptyPattern, AdjacentPlaceholders, UnknownPlaceholderType };

class PatternError : public std::runtime_error {
 public:
  PatternError(PatternErrc code, const std::string& message);
  PatternErrc code() const { return code_; }

 private:
  PatternErrc code_;
};

/// Literal segments interleaved with typed placeholders, e.g.
/// "the bird passes {int} pipes".
class StepPattern {
 public:
  using Segment = std::variant<std::string, PlaceholderType>;

  const std::string& source() const { return source_; }
  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<PlaceholderType> placeholders() const;

 private:
  friend StepPattern compile_pattern(std::string_view text);
  friend std::optional<std::vector<StepArg>> match_step(const StepPattern& pattern, std::string_view text);

  std::string source_;
  std::vector<Segment> segments_;
  std::regex matcher_;
};

/// Collapses whitespace runs to one space and trims.
std::string normalize_whitespace(std::string_view text);

/// Throws PatternError.
StepPattern compile_pattern(std::string_view text);

/// Anchored match: succeeds only when the whole (normalised) step text is
/// consumed. {int} matches -?[0-9]+, {float} also accepts decimals, {word}
/// one non-space token and {string} double-quoted content.
std::optional<std::vector<StepArg>> match_step(const StepPattern& pattern, std::string_view text);

}  // namespace bdg::binding
