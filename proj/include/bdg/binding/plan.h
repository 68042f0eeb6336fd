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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bdg/binding/registry.h"
#include "bdg/env/registry.h"
#include "bdg/gherkin/diagnostic.h"

namespace bdg::binding {

inline constexpr std::string_view kDefaultTrainer = "dqn_default";
inline constexpr double kDefaultThreshold = 0.95;

struct ConfigStep {
  ConfigHandler handler;
  StepCall call;
  std::string text;
};

struct AssertionStep {
  AssertionHandler handler;
  StepCall call;
  std::string text;
};

/// Everything needed to train for and evaluate one scenario.
struct ExecutablePlan {
  std::string feature_name;
  std::string scenario_name;
  std::string env_id;
  std::vector<ConfigStep> setup;
  std::vector<ConfigStep> config_mutations;
  std::vector<AssertionStep> assertions;
  std::string trainer_id;
  double threshold = kDefaultThreshold;
  /// Canonical form of env id and resolved steps; see fingerprint().
  std::string canonical_text;

  /// Applies setup then mutation handlers to a copy of `base`. Pure.
  env::EnvConfig build_config(const env::EnvConfig& base) const;
  std::vector<bool> evaluate(const env::EpisodeRecord& record) const;
  bool satisfied(const env::EpisodeRecord& record) const;
  /// FNV-1a 64 over feature name, scenario name and canonical_text, as 16
  /// lowercase hex digits. Trainer and threshold are not part of it.
  std::string fingerprint() const;
};

struct Registries {
  const StepRegistry* steps = nullptr;
  const env::EnvRegistry* envs = nullptr;
  std::function<bool(const std::string&)> has_trainer;
  /// Used when neither a Given step nor an @env tag names the environment.
  std::string default_env;
};

struct BindResult {
  std::optional<ExecutablePlan> plan;
  std::vector<gherkin::Diagnostic> diagnostics;
};

/// Scenario tags override feature tags of the same namespace.
BindResult bind_scenario(const gherkin::FeatureAst& feature, const gherkin::Scenario& scenario,
                         const Registries& registries);

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace bdg::binding
