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

#include "bdg/binding/registry.h"

namespace bdg::flappy {

/// Step definitions for Flappy Bird feature files:
///
///   Given the flappy bird game
///   Given a course of {int} pipes
///   Given a gap height of {float} pixels
///   Given an episode cap of {int} ticks
///   When the {word} pipe is at the {word} position   (first..tenth; lowest/middle/highest)
///   When pipe {int} is at height {float}
///   When the gap height is {float} pixels
///   Then the bird passes {int} pipes
///   Then the bird does not crash
void register_flappy_steps(binding::StepRegistry& registry);

/// 1 for "first", 2 for "second", ... 10 for "tenth"; 0 otherwise.
int ordinal_index(std::string_view word);

}  // namespace bdg::flappy
