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
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdg/binding/plan.h"
#include "bdg/gherkin/ast.h"
#include "bdg/gherkin/diagnostic.h"
#include "bdg/harness/report.h"
#include "bdg/harness/run_config.h"
#include "bdg/rl/train.h"

namespace bdg::harness {

enum class HarnessErrc { NoScenarioSelected, MissingModel, FingerprintMismatch, UnreadableFeature };

std::string_view errc_name(HarnessErrc code);

class HarnessError : public std::runtime_error {
 public:
  HarnessError(HarnessErrc code, const std::string& message);
  HarnessErrc code() const { return code_; }

 private:
  HarnessErrc code_;
};

/// Registries and run configuration shared by both modes.
struct Workspace {
  env::EnvRegistry envs;
  binding::StepRegistry steps;
  RunConfig config;
  std::string default_env;

  /// Built-in environments and steps, default trainers.
  static Workspace builtin();

  binding::Registries registries() const;
  /// In-process factory, or a remote session when [env.<id>] sets remote.
  env::EnvFactory factory(const std::string& env_id) const;
  /// Registry base, then [env.<id>] overrides, then the plan's steps.
  env::EnvConfig scenario_config(const binding::ExecutablePlan& plan) const;
  /// Trainer with feature/reward/bin specs resolved against env defaults.
  rl::TrainerSpec resolved_trainer(const std::string& trainer_id, const std::string& env_id) const;
};

struct ParsedFeature {
  std::filesystem::path path;
  gherkin::FeatureAst ast;
  std::vector<gherkin::Diagnostic> diagnostics;
};

/// Reads and parses; throws HarnessError(UnreadableFeature).
ParsedFeature read_feature(const std::filesystem::path& path);

/// Scenario names containing `filter` (all when empty), in file order.
/// Throws HarnessError(NoScenarioSelected).
std::vector<const gherkin::Scenario*> select_scenarios(const gherkin::FeatureAst& feature, const std::string& filter);

/// out_dir/<feature>/<scenario>.bdgm with both names slugged.
std::filesystem::path model_path(const std::filesystem::path& root, const std::string& feature,
                                 const std::string& scenario);

struct TrainOptions {
  std::string scenario_filter;
  std::optional<std::string> trainer;
  std::uint64_t seed = 42;
  std::optional<std::int64_t> budget;
  std::filesystem::path out_dir = "models";
  int jobs = 0;  // 0: hardware concurrency
  std::string created_at = "1970-01-01T00:00:00Z";
  std::ostream* progress = nullptr;
};

struct ScenarioTraining {
  std::string scenario;
  bool ok = false;
  std::filesystem::path model_file;
  rl::TrainingStats stats;
  std::string error;
};

struct TrainOutcome {
  std::vector<gherkin::Diagnostic> diagnostics;
  std::vector<ScenarioTraining> scenarios;

  /// 2 on diagnostics or any scenario error, else 0.
  int exit_code() const;
};

/// Trains one model per selected scenario. Nothing is trained when any
/// selected scenario fails to bind.
TrainOutcome train_mode(const Workspace& workspace, const std::filesystem::path& feature_file,
                        const TrainOptions& options);

struct TestOptions {
  std::string scenario_filter;
  std::filesystem::path models_dir = "models";
  int episodes = 100;
  std::uint64_t seed = 0;
  bool force = false;
  int jobs = 0;
  std::ostream* progress = nullptr;
};

struct TestOutcome {
  std::vector<gherkin::Diagnostic> diagnostics;
  std::optional<FeatureReport> report;
};

/// Parse errors leave `report` empty; binding, model and environment errors
/// become Error verdicts.
TestOutcome test_mode(const Workspace& workspace, const std::filesystem::path& feature_file,
                      const TestOptions& options);

/// Greedy evaluation of one plan: episode i uses seed + i.
EvalStats evaluate(const Workspace& workspace, const binding::ExecutablePlan& plan, const rl::Model& model,
                   int episodes, std::uint64_t seed);

/// Runs task(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& task);

}  // namespace bdg::harness
