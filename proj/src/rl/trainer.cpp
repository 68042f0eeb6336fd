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

#include "bdg/rl/trainer.h"

#include "bdg/rl/error.h"

namespace bdg::rl {

void TrainerSpec::validate() const {
  if (id.empty()) throw RlError(RlErrc::InvalidSpec, "trainer id is empty");
  if (budget < 1) throw RlError(RlErrc::InvalidSpec, "budget must be >= 1");
  if (probe_interval < 1) throw RlError(RlErrc::InvalidSpec, "probe_interval must be >= 1");
  if (probe_episodes < 1) throw RlError(RlErrc::InvalidSpec, "probe_episodes must be >= 1");
  hp.validate();
}

TrainerSpec TrainerSpec::defaults(std::string id, Algorithm algorithm) {
  TrainerSpec spec;
  spec.id = std::move(id);
  spec.algorithm = algorithm;
  spec.hp = Hyperparameters::defaults(algorithm);
  switch (algorithm) {
    case Algorithm::QTable: spec.budget = 200'000; break;
    case Algorithm::Dqn: spec.budget = 500'000; break;
    case Algorithm::Ppo: spec.budget = 1'000'000; break;
  }
  return spec;
}

TrainerRegistry TrainerRegistry::with_defaults() {
  TrainerRegistry registry;
  registry.add(TrainerSpec::defaults("qtable_default", Algorithm::QTable));
  registry.add(TrainerSpec::defaults("dqn_default", Algorithm::Dqn));
  registry.add(TrainerSpec::defaults("ppo_default", Algorithm::Ppo));
  return registry;
}

void TrainerRegistry::add(TrainerSpec spec) {
  spec.validate();
  const std::string id = spec.id;
  specs_.insert_or_assign(id, std::move(spec));
}

const TrainerSpec& TrainerRegistry::at(const std::string& id) const {
  const auto it = specs_.find(id);
  if (it == specs_.end()) throw RlError(RlErrc::UnknownTrainer, "no trainer named '" + id + "'");
  return it->second;
}

TrainerSpec& TrainerRegistry::at(const std::string& id) {
  const auto it = specs_.find(id);
  if (it == specs_.end()) throw RlError(RlErrc::UnknownTrainer, "no trainer named '" + id + "'");
  return it->second;
}

std::vector<std::string> TrainerRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, spec] : specs_) out.push_back(id);
  return out;
}

}  // namespace bdg::rl
