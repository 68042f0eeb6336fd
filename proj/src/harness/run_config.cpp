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

#include "bdg/harness/run_config.h"

#include <fstream>
#include <sstream>

#include "bdg/harness/toml.h"
#include "bdg/rl/error.h"

namespace bdg::harness {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& message) {
  throw ConfigError("[" + where + "] " + message);
}

double require_number(const TomlValue& v, const std::string& where, const std::string& key) {
  const auto n = v.number();
  if (!n) bad(where, "'" + key + "' must be a number, got " + std::string(v.type_name()));
  return *n;
}

std::int64_t require_integer(const TomlValue& v, const std::string& where, const std::string& key) {
  const auto* i = v.integer();
  if (i == nullptr) bad(where, "'" + key + "' must be an integer, got " + std::string(v.type_name()));
  return *i;
}

const TomlTable& require_table(const TomlValue& v, const std::string& where, const std::string& key) {
  const auto* t = v.table();
  if (t == nullptr) bad(where, "'" + key + "' must be a table");
  return *t;
}

env::FeatureSpec parse_features(const TomlTable& table, const std::string& where) {
  env::FeatureSpec spec;
  for (const auto& [channel, entry] : table.items) {
    env::FeatureSpec::Entry e{channel, 1.0, 0.0};
    for (const auto& [key, value] : require_table(entry, where, channel).items) {
      if (key == "scale") {
        e.scale = require_number(value, where + "." + channel, key);
      } else if (key == "offset") {
        e.offset = require_number(value, where + "." + channel, key);
      } else {
        bad(where + "." + channel, "unknown key '" + key + "' (expected scale, offset)");
      }
    }
    spec.entries.push_back(std::move(e));
  }
  if (spec.entries.empty()) bad(where, "needs at least one channel");
  return spec;
}

env::RewardSpec parse_rewards(const TomlTable& table, const std::string& where) {
  env::RewardSpec spec;
  for (const auto& [key, value] : table.items) {
    const double w = require_number(value, where, key);
    if (key == "living_bonus") {
      spec.living_bonus = w;
    } else {
      spec.event_weights[key] = w;
    }
  }
  return spec;
}

env::FeatureBins parse_bins(const TomlValue& value, const std::string& where) {
  const auto* array = value.array();
  if (array == nullptr) bad(where, "'bins' must be an array of {low, high, bins} tables");
  env::FeatureBins out;
  for (const auto& item : *array) {
    env::FeatureBins::Axis axis;
    for (const auto& [key, v] : require_table(item, where, "bins").items) {
      if (key == "low") {
        axis.low = require_number(v, where, key);
      } else if (key == "high") {
        axis.high = require_number(v, where, key);
      } else if (key == "bins") {
        axis.bins = static_cast<int>(require_integer(v, where, key));
      } else {
        bad(where, "unknown bins key '" + key + "'");
      }
    }
    if (!(axis.high > axis.low) || axis.bins < 1) bad(where, "bins need high > low and bins >= 1");
    out.axes.push_back(axis);
  }
  return out;
}

void apply_trainer(rl::TrainerRegistry& registry, const std::string& id, const TomlTable& table) {
  const std::string where = "trainer." + id;
  rl::TrainerSpec spec;
  if (const auto* alg = table.find("algorithm")) {
    const auto* name = alg->string();
    const auto parsed = name != nullptr ? rl::parse_algorithm(*name) : std::nullopt;
    if (!parsed) bad(where, "'algorithm' must be one of qtable, dqn, ppo");
    spec = rl::TrainerSpec::defaults(id, *parsed);
  } else if (registry.contains(id)) {
    spec = registry.at(id);
  } else {
    bad(where, "a new trainer needs an 'algorithm'");
  }
  try {
    for (const auto& [key, value] : table.items) {
      if (key == "algorithm") continue;
      if (key == "budget") {
        spec.budget = require_integer(value, where, key);
      } else if (key == "probe_interval") {
        spec.probe_interval = require_integer(value, where, key);
      } else if (key == "probe_episodes") {
        spec.probe_episodes = static_cast<int>(require_integer(value, where, key));
      } else if (key == "hidden") {
        const auto* array = value.array();
        if (array == nullptr) bad(where, "'hidden' must be an array of integers");
        std::vector<int> sizes;
        for (const auto& v : *array) sizes.push_back(static_cast<int>(require_integer(v, where, key)));
        spec.hp.set_hidden(std::move(sizes));
      } else if (key == "features") {
        spec.features = parse_features(require_table(value, where, key), where + ".features");
      } else if (key == "rewards") {
        spec.rewards = parse_rewards(require_table(value, where, key), where + ".rewards");
      } else if (key == "bins") {
        spec.bins = parse_bins(value, where);
      } else {
        spec.hp.set(key, require_number(value, where, key));
      }
    }
    if (spec.features && spec.bins && spec.bins->axes.size() != spec.features->dimension()) {
      bad(where, "bins has " + std::to_string(spec.bins->axes.size()) + " axes but features has " +
                     std::to_string(spec.features->dimension()) + " channels");
    }
    registry.add(std::move(spec));
  } catch (const rl::RlError& e) {
    bad(where, e.what());
  }
}

EnvSettings parse_env(const std::string& id, const TomlTable& table) {
  const std::string where = "env." + id;
  EnvSettings out;
  for (const auto& [key, value] : table.items) {
    if (key == "episode_cap") {
      out.episode_cap = require_integer(value, where, key);
      if (*out.episode_cap < 1) bad(where, "'episode_cap' must be >= 1");
    } else if (key == "remote") {
      const auto* text = value.string();
      if (text == nullptr) bad(where, "'remote' must be a \"host:port\" string");
      try {
        out.remote = netenv::parse_address(*text);
      } catch (const netenv::NetError& e) {
        bad(where, e.what());
      }
    } else if (const auto* s = value.string()) {
      out.parameters[key] = *s;
    } else {
      out.parameters[key] = require_number(value, where, key);
    }
  }
  return out;
}

}  // namespace

env::EnvConfig RunConfig::apply_env(env::EnvConfig base) const {
  const auto it = envs.find(base.env_id);
  if (it == envs.end()) return base;
  for (const auto& [name, value] : it->second.parameters) base.parameters[name] = value;
  if (it->second.episode_cap) base.episode_cap = *it->second.episode_cap;
  return base;
}

RunConfig parse_run_config(std::string_view text) {
  TomlTable root;
  try {
    root = parse_toml(text);
  } catch (const TomlError& e) {
    throw ConfigError(e.what());
  }
  RunConfig config;
  for (const auto& [section, value] : root.items) {
    const auto* table = value.table();
    if (section == "trainer" && table != nullptr) {
      for (const auto& [id, body] : table->items) apply_trainer(config.trainers, id, require_table(body, "trainer", id));
    } else if (section == "env" && table != nullptr) {
      for (const auto& [id, body] : table->items) config.envs[id] = parse_env(id, require_table(body, "env", id));
    } else {
      throw ConfigError("unknown top-level entry '" + section + "' (expected [trainer.<id>] or [env.<id>])");
    }
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_run_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace bdg::harness
