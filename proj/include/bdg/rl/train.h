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
#include <vector>

#include "bdg/env/episode.h"
#include "bdg/env/registry.h"
#include "bdg/env/spec.h"
#include "bdg/rl/model.h"
#include "bdg/rl/trainer.h"

namespace bdg::rl {

/// Progress between two probes.
struct EpochStats {
  std::int64_t env_steps = 0;  // cumulative
  std::int64_t episodes = 0;   // training episodes finished in this epoch
  double mean_return = 0.0;
  double train_success_rate = 0.0;
  double probe_success_rate = 0.0;
  double mean_loss = 0.0;
  double seconds = 0.0;
};

struct TrainingStats {
  std::vector<EpochStats> epochs;
  std::int64_t env_steps = 0;
  std::int64_t episodes = 0;
  std::int64_t updates = 0;
  double best_probe_success = 0.0;
  std::int64_t best_probe_step = 0;
  bool reached_threshold = false;
  double wall_seconds = 0.0;
};

/// Everything about the scenario a learner needs; specs already resolved
/// against the environment defaults.
struct TrainContext {
  env::EnvFactory make_env;
  env::EnvConfig config;
  env::FeatureSpec features;
  env::RewardSpec rewards;
  env::FeatureBins bins;
  /// Whether an episode satisfies the scenario's assertions.
  std::function<bool(const env::EpisodeRecord&)> success;
  double threshold = 0.95;
  std::uint64_t seed = 0;
  std::function<void(const EpochStats&)> on_epoch;
};

struct TrainResult {
  Model model;
  TrainingStats stats;
};

/// Runs the trainer's algorithm until its budget is spent or a greedy probe
/// (probe_episodes episodes every probe_interval steps, plus one at the end)
/// reaches the threshold. Returns the best model seen by the probes, the
/// latest one on ties. Deterministic for a fixed seed.
TrainResult train(const TrainContext& context, const TrainerSpec& spec);

/// Runs `episodes` greedy episodes and returns the fraction that succeed.
double probe_success(env::Environment& env, const TrainContext& context, const Model& model, int episodes);

}  // namespace bdg::rl
