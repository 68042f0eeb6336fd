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

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bdg/env/environment.h"
#include "bdg/env/spec.h"

namespace bdg::env {

using EnvFactory = std::function<std::unique_ptr<Environment>()>;

struct EnvEntry {
  std::string id;
  EnvFactory factory;
  FeatureSpec default_features;
  RewardSpec default_rewards;
  FeatureBins default_bins;
  std::int64_t default_episode_cap = 1000;
};

class EnvRegistry {
 public:
  /// Replaces any existing entry with the same id.
  void add(EnvEntry entry);

  bool contains(const std::string& id) const { return entries_.contains(id); }
  /// Throws EnvError(UnknownEnv).
  const EnvEntry& at(const std::string& id) const;
  std::vector<std::string> ids() const;

  /// Base configuration for an environment: id and default episode cap.
  EnvConfig base_config(const std::string& id) const;

 private:
  std::map<std::string, EnvEntry> entries_;
};

}  // namespace bdg::env
