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

#include "bdg/env/chain.h"

namespace bdg::env {

ChainEnv::ChainEnv() : channels_(std::make_shared<const std::vector<std::string>>(std::vector<std::string>{"state"})) {}

void ChainEnv::on_reset(const EnvConfig& config, std::uint64_t) {
  require_known_parameters(config, {"length", "start"});
  const auto length = param_int(config, "length", 5);
  if (length < 2 || length > 1000) throw invalid_config("length", "must be in [2, 1000]");
  const auto start = param_int(config, "start", 0);
  if (start < 0 || start >= length - 1) throw invalid_config("start", "must be a non-goal state");
  length_ = static_cast<int>(length);
  state_ = static_cast<int>(start);
}

LocalEnvironment::StepResult ChainEnv::on_step(int action) {
  StepResult result;
  state_ = action == 0 ? std::max(0, state_ - 1) : state_ + 1;
  if (state_ == length_ - 1) {
    result.events.push_back("goal");
    result.terminal = true;
  }
  return result;
}

std::vector<double> ChainEnv::observe() const { return {static_cast<double>(state_)}; }

EnvEntry chain_entry() {
  EnvEntry entry;
  entry.id = "chain";
  entry.factory = [] { return std::make_unique<ChainEnv>(); };
  entry.default_features = FeatureSpec{{{"state", 1.0, 0.0}}};
  entry.default_rewards = RewardSpec{{{"goal", 1.0}}, 0.0};
  // One bucket per state for chains up to 64 long.
  entry.default_bins = FeatureBins{{{0.0, 64.0, 64}}};
  entry.default_episode_cap = 100;
  return entry;
}

}  // namespace bdg::env
