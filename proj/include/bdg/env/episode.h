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
#include <map>
#include <string>

#include "bdg/env/environment.h"

namespace bdg::env {

/// Summary of one finished episode. Assertions are evaluated against this.
struct EpisodeRecord {
  std::map<std::string, std::int64_t> event_counts;
  double episodic_return = 0.0;
  std::int64_t ticks = 0;
  Observation final_obs;

  std::int64_t count(const std::string& event) const;
};

using ActionPolicy = std::function<Action(const Observation&)>;
using RewardFn = std::function<double(const Transition&)>;

/// Plays one episode to completion (done is guaranteed by the episode cap).
EpisodeRecord run_episode(Environment& env, const EnvConfig& config, std::uint64_t seed,
                          const ActionPolicy& policy, const RewardFn& reward);

}  // namespace bdg::env
