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

#include "bdg/flappy/steps.h"

#include <array>
#include <string>

#include "bdg/flappy/flappy.h"

namespace bdg::flappy {

using binding::StepCall;
using binding::StepRejected;
using env::EnvConfig;

int ordinal_index(std::string_view word) {
  static constexpr std::array<std::string_view, 10> kOrdinals{
      "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"};
  for (std::size_t i = 0; i < kOrdinals.size(); ++i) {
    if (kOrdinals[i] == word) return static_cast<int>(i) + 1;
  }
  return 0;
}

namespace {

void require_pipe(const EnvConfig& config, std::int64_t index) {
  const auto count = env::param_int(config, "pipe_count", 2);
  if (index < 1 || index > count) {
    throw StepRejected("pipe " + std::to_string(index) + " does not exist on a course of " +
                       std::to_string(count) + " pipes");
  }
}

}  // namespace

void register_flappy_steps(binding::StepRegistry& registry) {
  registry.given("the flappy bird game", [](EnvConfig& config, const StepCall&) { config.env_id = "flappy"; });
  registry.given("a course of {int} pipes", [](EnvConfig& config, const StepCall& call) {
    const auto count = call.int_arg(0);
    if (count < 0 || count > 1000) throw StepRejected("pipe count must be in [0, 1000]");
    config.set("pipe_count", static_cast<double>(count));
  });
  registry.given("a gap height of {float} pixels", [](EnvConfig& config, const StepCall& call) {
    config.set("gap_height", call.real_arg(0));
  });
  registry.given("an episode cap of {int} ticks", [](EnvConfig& config, const StepCall& call) {
    const auto cap = call.int_arg(0);
    if (cap < 1) throw StepRejected("episode cap must be at least 1");
    config.episode_cap = cap;
  });

  registry.when("the {word} pipe is at the {word} position", [](EnvConfig& config, const StepCall& call) {
    const std::string ordinal = call.text_arg(0);
    const int index = ordinal_index(ordinal);
    if (index == 0) throw StepRejected("'" + ordinal + "' is not an ordinal between first and tenth");
    const std::string position = call.text_arg(1);
    if (position != "lowest" && position != "middle" && position != "highest") {
      throw StepRejected("position must be lowest, middle or highest, got '" + position + "'");
    }
    require_pipe(config, index);
    config.set("pipe" + std::to_string(index), position);
  });
  registry.when("pipe {int} is at height {float}", [](EnvConfig& config, const StepCall& call) {
    const auto index = call.int_arg(0);
    require_pipe(config, index);
    config.set("pipe" + std::to_string(index), call.real_arg(1));
  });
  registry.when("the gap height is {float} pixels", [](EnvConfig& config, const StepCall& call) {
    config.set("gap_height", call.real_arg(0));
  });

  registry.then("the bird passes {int} pipes", [](const env::EpisodeRecord& record, const StepCall& call) {
    return record.count("pipe_passed") >= call.int_arg(0);
  });
  registry.then("the bird does not crash", [](const env::EpisodeRecord& record, const StepCall&) {
    return record.count("collision") == 0;
  });
}

}  // namespace bdg::flappy
