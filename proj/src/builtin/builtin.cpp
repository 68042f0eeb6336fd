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

#include "bdg/builtin/builtin.h"

#include "bdg/env/chain.h"
#include "bdg/flappy/flappy.h"
#include "bdg/flappy/steps.h"

namespace bdg::builtin {

using binding::StepCall;
using binding::StepRejected;
using env::EnvConfig;

void register_chain_steps(binding::StepRegistry& registry) {
  registry.given("a chain of {int} states", [](EnvConfig& config, const StepCall& call) {
    const auto length = call.int_arg(0);
    if (length < 2 || length > 100000) throw StepRejected("chain length must be in [2, 100000]");
    config.env_id = "chain";
    config.set("length", static_cast<double>(length));
  });
  registry.when("the agent starts at state {int}", [](EnvConfig& config, const StepCall& call) {
    const auto start = call.int_arg(0);
    const auto length = env::param_int(config, "length", 5);
    if (start < 0 || start >= length - 1) {
      throw StepRejected("start state must be in [0, " + std::to_string(length - 2) + "]");
    }
    config.set("start", static_cast<double>(start));
  });
  registry.then("the agent reaches the goal",
                [](const env::EpisodeRecord& record, const StepCall&) { return record.count("goal") >= 1; });
  registry.then("the agent needs at most {int} ticks",
                [](const env::EpisodeRecord& record, const StepCall& call) { return record.ticks <= call.int_arg(0); });
}

env::EnvRegistry default_envs() {
  env::EnvRegistry registry;
  registry.add(flappy::flappy_entry());
  registry.add(env::chain_entry());
  return registry;
}

binding::StepRegistry default_steps() {
  binding::StepRegistry registry;
  flappy::register_flappy_steps(registry);
  register_chain_steps(registry);
  return registry;
}

}  // namespace bdg::builtin
