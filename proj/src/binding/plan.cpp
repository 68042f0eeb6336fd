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

#include "bdg/binding/plan.h"

#include <charconv>
#include <cstdio>

namespace bdg::binding {

using gherkin::Diagnostic;
using gherkin::make_error;
namespace codes = gherkin::codes;

env::EnvConfig ExecutablePlan::build_config(const env::EnvConfig& base) const {
  env::EnvConfig config = base;
  config.env_id = env_id;
  for (const auto& step : setup) step.handler(config, step.call);
  for (const auto& step : config_mutations) step.handler(config, step.call);
  config.env_id = env_id;
  return config;
}

std::vector<bool> ExecutablePlan::evaluate(const env::EpisodeRecord& record) const {
  std::vector<bool> out;
  out.reserve(assertions.size());
  for (const auto& a : assertions) out.push_back(a.handler(record, a.call));
  return out;
}

bool ExecutablePlan::satisfied(const env::EpisodeRecord& record) const {
  for (const auto& a : assertions) {
    if (!a.handler(record, a.call)) return false;
  }
  return true;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExecutablePlan::fingerprint() const {
  std::uint64_t h = fnv1a64(feature_name);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  h = fnv1a64(scenario_name, h);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  h = fnv1a64(canonical_text, h);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct TagChoice {
  std::string value;
  gherkin::SourceSpan span;
};

void append_canonical(std::string& out, const gherkin::Step& step) {
  out += gherkin::keyword_name(step.resolved);
  out += ' ';
  out += normalize_whitespace(step.text);
  out += '\n';
  if (step.table) {
    for (const auto& row : step.table->rows) {
      out += '|';
      for (const auto& cell : row) {
        out += cell;
        out += '|';
      }
      out += '\n';
    }
  }
}

}  // namespace

BindResult bind_scenario(const gherkin::FeatureAst& feature, const gherkin::Scenario& scenario,
                         const Registries& registries) {
  BindResult result;
  auto& diags = result.diagnostics;

  ExecutablePlan plan;
  plan.feature_name = feature.name;
  plan.scenario_name = scenario.name;
  plan.trainer_id = std::string(kDefaultTrainer);

  std::optional<TagChoice> env_tag;
  std::optional<TagChoice> trainer_tag;
  std::optional<TagChoice> threshold_tag;
  auto scan_tags = [&](const std::vector<std::string>& tags, const gherkin::SourceSpan& span) {
    for (const auto& tag : tags) {
      const auto ns = gherkin::tag_namespace(tag);
      const TagChoice choice{std::string(gherkin::tag_value(tag)), span};
      if (ns == "env") env_tag = choice;
      if (ns == "trainer") trainer_tag = choice;
      if (ns == "threshold") threshold_tag = choice;
    }
  };
  scan_tags(feature.tags, feature.span);
  scan_tags(scenario.tags, scenario.span);

  if (trainer_tag) {
    if (trainer_tag->value.empty()) {
      diags.push_back(make_error(codes::kBadTagValue, "@trainer tag needs a trainer id", trainer_tag->span));
    } else {
      plan.trainer_id = trainer_tag->value;
    }
  }
  if (threshold_tag) {
    const auto& text = threshold_tag->value;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(value > 0.0 && value <= 1.0)) {
      diags.push_back(make_error(codes::kBadTagValue, "@threshold must be a number in (0, 1], got '" + text + "'",
                                 threshold_tag->span));
    } else {
      plan.threshold = value;
    }
  }

  std::string canonical;
  for (const auto& step : scenario.steps) {
    Resolution resolution;
    try {
      resolution = registries.steps->resolve(step);
    } catch (const BindError& e) {
      const auto code = e.code() == BindErrc::AmbiguousStep ? codes::kAmbiguousStep : codes::kUnboundStep;
      diags.push_back(make_error(code, e.what(), step.span));
      continue;
    }
    append_canonical(canonical, step);
    const StepBinding& binding = *resolution.binding;
    switch (binding.kind) {
      case BindingKind::EnvSetup:
        plan.setup.push_back({std::get<ConfigHandler>(binding.handler), std::move(resolution.call), step.text});
        break;
      case BindingKind::SituationMutation:
        plan.config_mutations.push_back(
            {std::get<ConfigHandler>(binding.handler), std::move(resolution.call), step.text});
        break;
      case BindingKind::Assertion:
        plan.assertions.push_back(
            {std::get<AssertionHandler>(binding.handler), std::move(resolution.call), step.text});
        break;
    }
  }

  if (plan.assertions.empty() && !gherkin::has_errors(diags)) {
    diags.push_back(make_error(codes::kMissingAssertion,
                               "scenario '" + scenario.name + "' has no Then step bound to an assertion",
                               scenario.span));
  }

  // Environment: a Given step beats an @env tag, which beats the default.
  env::EnvConfig scratch;
  scratch.env_id = env_tag ? env_tag->value : registries.default_env;
  bool steps_ok = true;
  auto run_handlers = [&](const std::vector<ConfigStep>& steps, const std::vector<const gherkin::Step*>& sources) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
      try {
        steps[i].handler(scratch, steps[i].call);
      } catch (const std::exception& e) {
        steps_ok = false;
        diags.push_back(make_error(codes::kStepRejected, "step '" + steps[i].text + "' rejected: " + e.what(),
                                   sources[i]->span));
      }
    }
  };
  std::vector<const gherkin::Step*> setup_sources;
  std::vector<const gherkin::Step*> mutation_sources;
  for (const auto& step : scenario.steps) {
    if (step.resolved == gherkin::StepKeyword::Given) setup_sources.push_back(&step);
    if (step.resolved == gherkin::StepKeyword::When) mutation_sources.push_back(&step);
  }
  const bool all_bound = setup_sources.size() == plan.setup.size() &&
                         mutation_sources.size() == plan.config_mutations.size();
  if (all_bound) run_handlers(plan.setup, setup_sources);
  plan.env_id = scratch.env_id;
  if (plan.env_id.empty()) {
    diags.push_back(make_error(codes::kUnknownEnv, "no environment selected; add a Given step or an @env tag",
                               scenario.span));
  } else if (!registries.envs->contains(plan.env_id)) {
    diags.push_back(make_error(codes::kUnknownEnv, "unknown environment '" + plan.env_id + "'", scenario.span));
  } else if (all_bound && steps_ok) {
    scratch = registries.envs->base_config(plan.env_id);
    run_handlers(plan.setup, setup_sources);
    run_handlers(plan.config_mutations, mutation_sources);
  }

  if (registries.has_trainer && !registries.has_trainer(plan.trainer_id)) {
    diags.push_back(make_error(codes::kUnknownTrainer, "unknown trainer '" + plan.trainer_id + "'",
                               trainer_tag ? trainer_tag->span : scenario.span));
  }

  plan.canonical_text = "env=" + plan.env_id + "\n" + canonical;
  if (!gherkin::has_errors(diags)) result.plan = std::move(plan);
  return result;
}

}  // namespace bdg::binding
