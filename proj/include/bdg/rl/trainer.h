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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bdg/env/spec.h"
#include "bdg/rl/hyper.h"

namespace bdg::rl {

inline constexpr std::int64_t kProbeInterval = 10'000;
inline constexpr int kProbeEpisodes = 20;

/// A named training recipe. Feature, reward and bin specs left empty fall
/// back to the environment's defaults.
struct TrainerSpec {
  std::string id;
  Algorithm algorithm = Algorithm::Dqn;
  Hyperparameters hp;
  std::optional<env::FeatureSpec> features;
  std::optional<env::RewardSpec> rewards;
  std::optional<env::FeatureBins> bins;
  std::int64_t budget = 500'000;
  std::int64_t probe_interval = kProbeInterval;
  int probe_episodes = kProbeEpisodes;

  /// Throws RlError(InvalidSpec).
  void validate() const;

  /// Default recipe for an algorithm: budgets qtable 200k, dqn 500k, ppo 1M.
  static TrainerSpec defaults(std::string id, Algorithm algorithm);
};

class TrainerRegistry {
 public:
  /// qtable_default, dqn_default and ppo_default.
  static TrainerRegistry with_defaults();

  void add(TrainerSpec spec);
  bool contains(const std::string& id) const { return specs_.contains(id); }
  /// Throws RlError(UnknownTrainer).
  const TrainerSpec& at(const std::string& id) const;
  TrainerSpec& at(const std::string& id);
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, TrainerSpec> specs_;
};

}  // namespace bdg::rl
