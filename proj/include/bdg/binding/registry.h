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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bdg/binding/pattern.h"
#include "bdg/env/environment.h"
#include "bdg/env/episode.h"
#include "bdg/gherkin/ast.h"

namespace bdg::binding {

/// Arguments handed to a step handler.
struct StepCall {
  std::vector<StepArg> args;
  std::optional<gherkin::DataTable> table;

  std::int64_t int_arg(std::size_t i) const;
  /// Accepts {int} and {float} captures.
  double real_arg(std::size_t i) const;
  /// Word or quoted-string content.
  std::string text_arg(std::size_t i) const;
};

/// Thrown by handlers that refuse their arguments (e.g. "the sideways pipe").
class StepRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ConfigHandler = std::function<void(env::EnvConfig&, const StepCall&)>;
using AssertionHandler = std::function<bool(const env::EpisodeRecord&, const StepCall&)>;

enum class BindingKind { EnvSetup, SituationMutation, Assertion };

struct StepBinding {
  gherkin::StepKeyword keyword = gherkin::StepKeyword::Given;
  StepPattern pattern;
  BindingKind kind = BindingKind::EnvSetup;
  std::variant<ConfigHandler, AssertionHandler> handler;
};

enum class BindErrc { UnboundStep, AmbiguousStep, KeywordMismatch };

class BindError : public std::runtime_error {
 public:
  BindError(BindErrc code, const std::string& message);
  BindErrc code() const { return code_; }

 private:
  BindErrc code_;
};

struct Resolution {
  const StepBinding* binding = nullptr;
  StepCall call;
};

/// Step definitions keyed by (keyword, pattern). Built once, then read-only.
class StepRegistry {
 public:
  /// Enforces Given/EnvSetup, When/SituationMutation, Then/Assertion and the
  /// matching handler type; throws BindError(KeywordMismatch) otherwise.
  void add(StepBinding binding);

  void given(std::string_view pattern, ConfigHandler handler);
  void when(std::string_view pattern, ConfigHandler handler);
  void then(std::string_view pattern, AssertionHandler handler);

  /// Uses the step's resolved keyword. Throws BindError(UnboundStep) with the
  /// three nearest patterns, or BindError(AmbiguousStep) listing all matches.
  Resolution resolve(const gherkin::Step& step) const;

  const std::vector<StepBinding>& bindings() const { return bindings_; }

 private:
  std::vector<StepBinding> bindings_;
};

std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace bdg::binding
