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

#include "bdg/binding/registry.h"

#include <algorithm>
#include <numeric>

namespace bdg::binding {

using gherkin::StepKeyword;

BindError::BindError(BindErrc code, const std::string& message) : std::runtime_error(message), code_(code) {}

std::int64_t StepCall::int_arg(std::size_t i) const {
  if (i >= args.size()) throw StepRejected("missing argument " + std::to_string(i));
  if (const auto* v = std::get_if<std::int64_t>(&args[i])) return *v;
  throw StepRejected("argument " + std::to_string(i) + " is not an integer");
}

double StepCall::real_arg(std::size_t i) const {
  if (i >= args.size()) throw StepRejected("missing argument " + std::to_string(i));
  if (const auto* v = std::get_if<double>(&args[i])) return *v;
  if (const auto* v = std::get_if<std::int64_t>(&args[i])) return static_cast<double>(*v);
  throw StepRejected("argument " + std::to_string(i) + " is not a number");
}

std::string StepCall::text_arg(std::size_t i) const {
  if (i >= args.size()) throw StepRejected("missing argument " + std::to_string(i));
  if (const auto* v = std::get_if<Word>(&args[i])) return v->value;
  if (const auto* v = std::get_if<QuotedString>(&args[i])) return v->value;
  return to_string(args[i]);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

namespace {

BindingKind kind_for(StepKeyword keyword) {
  switch (keyword) {
    case StepKeyword::Given: return BindingKind::EnvSetup;
    case StepKeyword::When: return BindingKind::SituationMutation;
    case StepKeyword::Then: return BindingKind::Assertion;
    default: break;
  }
  throw BindError(BindErrc::KeywordMismatch, "bindings register under Given, When or Then only");
}

}  // namespace

void StepRegistry::add(StepBinding binding) {
  if (kind_for(binding.keyword) != binding.kind) {
    throw BindError(BindErrc::KeywordMismatch,
                    "'" + binding.pattern.source() + "': keyword does not match the binding kind");
  }
  const bool wants_assertion = binding.kind == BindingKind::Assertion;
  if (wants_assertion != std::holds_alternative<AssertionHandler>(binding.handler)) {
    throw BindError(BindErrc::KeywordMismatch,
                    "'" + binding.pattern.source() + "': handler type does not match the binding kind");
  }
  bindings_.push_back(std::move(binding));
}

void StepRegistry::given(std::string_view pattern, ConfigHandler handler) {
  add({StepKeyword::Given, compile_pattern(pattern), BindingKind::EnvSetup, std::move(handler)});
}

void StepRegistry::when(std::string_view pattern, ConfigHandler handler) {
  add({StepKeyword::When, compile_pattern(pattern), BindingKind::SituationMutation, std::move(handler)});
}

void StepRegistry::then(std::string_view pattern, AssertionHandler handler) {
  add({StepKeyword::Then, compile_pattern(pattern), BindingKind::Assertion, std::move(handler)});
}

Resolution StepRegistry::resolve(const gherkin::Step& step) const {
  std::vector<Resolution> matches;
  for (const auto& binding : bindings_) {
    if (binding.keyword != step.resolved) continue;
    if (auto args = match_step(binding.pattern, step.text)) {
      matches.push_back({&binding, StepCall{std::move(*args), step.table}});
    }
  }
  const std::string label = std::string(gherkin::keyword_name(step.resolved)) + " \"" + step.text + "\"";
  if (matches.size() == 1) return std::move(matches.front());
  if (matches.size() > 1) {
    std::string message = "step " + label + " matches " + std::to_string(matches.size()) + " definitions:";
    for (const auto& m : matches) message += " '" + m.binding->pattern.source() + "'";
    throw BindError(BindErrc::AmbiguousStep, message);
  }

  const std::string text = normalize_whitespace(step.text);
  std::vector<std::pair<std::size_t, const StepBinding*>> ranked;
  for (const auto& binding : bindings_) ranked.emplace_back(edit_distance(text, binding.pattern.source()), &binding);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string message = "no step definition matches " + label;
  if (!ranked.empty()) {
    message += "; nearest:";
    for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
      message += std::string(i == 0 ? " " : ", ") + std::string(gherkin::keyword_name(ranked[i].second->keyword)) + " '" +
                 ranked[i].second->pattern.source() + "'";
    }
  }
  throw BindError(BindErrc::UnboundStep, message);
}

}  // namespace bdg::binding
