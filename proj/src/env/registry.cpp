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

#include "bdg/env/registry.h"

namespace bdg::env {

void EnvRegistry::add(EnvEntry entry) {
  const std::string id = entry.id;
  entries_.insert_or_assign(id, std::move(entry));
}

const EnvEntry& EnvRegistry::at(const std::string& id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) throw EnvError(EnvErrc::UnknownEnv, "no environment registered as '" + id + "'");
  return it->second;
}

std::vector<std::string> EnvRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, entry] : entries_) out.push_back(id);
  return out;
}

EnvConfig EnvRegistry::base_config(const std::string& id) const {
  EnvConfig config;
  config.env_id = id;
  config.episode_cap = at(id).default_episode_cap;
  return config;
}

}  // namespace bdg::env
