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

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "bdg/env/environment.h"
#include "bdg/netenv/socket.h"
#include "bdg/rl/trainer.h"

namespace bdg::harness {

/// Per-environment overrides from an [env.<id>] table.
struct EnvSettings {
  std::map<std::string, env::ParamValue> parameters;
  std::optional<std::int64_t> episode_cap;
  std::optional<netenv::Address> remote;
};

/// Contents of a run-config file layered over the built-in trainers.
struct RunConfig {
  rl::TrainerRegistry trainers = rl::TrainerRegistry::with_defaults();
  std::map<std::string, EnvSettings> envs;

  /// Starting config for an environment: registry base plus [env.<id>] values.
  env::EnvConfig apply_env(env::EnvConfig base) const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ConfigError naming the offending table and key.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace bdg::harness
