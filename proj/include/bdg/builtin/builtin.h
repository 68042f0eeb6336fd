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

#include <string_view>

#include "bdg/binding/registry.h"
#include "bdg/env/registry.h"

namespace bdg::builtin {

inline constexpr std::string_view kDefaultEnv = "flappy";

/// Chain MDP steps: "a chain of {int} states", "the agent starts at state
/// {int}", "the agent reaches the goal", "the agent needs at most {int} ticks".
void register_chain_steps(binding::StepRegistry& registry);

/// flappy and chain.
env::EnvRegistry default_envs();
binding::StepRegistry default_steps();

}  // namespace bdg::builtin
