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

#include "bdg/env/episode.h"

namespace bdg::env {

std::int64_t EpisodeRecord::count(const std::string& event) const {
  const auto it = event_counts.find(event);
  return it == event_counts.end() ? 0 : it->second;
}

EpisodeRecord run_episode(Environment& env, const EnvConfig& config, std::uint64_t seed,
                          const ActionPolicy& policy, const RewardFn& reward) {
  EpisodeRecord record;
  Observation obs = env.reset(config, seed);
  for (;;) {
    Transition t = env.step(policy(obs));
    for (const auto& e : t.events) ++record.event_counts[e];
    record.episodic_return += reward ? reward(t) : 0.0;
    record.ticks = t.tick;
    obs = std::move(t.obs);
    if (t.done) break;
  }
  record.final_obs = std::move(obs);
  return record;
}

}  // namespace bdg::env
