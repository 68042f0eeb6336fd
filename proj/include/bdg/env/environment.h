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
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bdg::env {

enum class EnvErrc {
  InvalidConfig,
  EpisodeFinished,
  ActionOutOfRange,
  MissingChannel,
  NotReset,
  UnknownEnv,
};

std::string_view errc_name(EnvErrc code);

class EnvError : public std::runtime_error {
 public:
  EnvError(EnvErrc code, const std::string& message);
  EnvErrc code() const { return code_; }

 private:
  EnvErrc code_;
};

/// InvalidConfig naming the offending parameter.
EnvError invalid_config(std::string_view parameter, std::string_view reason);

using ParamValue = std::variant<double, std::string>;

struct EnvConfig {
  std::string env_id;
  std::map<std::string, ParamValue> parameters;
  std::int64_t episode_cap = 1000;

  void set(const std::string& name, double value) { parameters[name] = value; }
  void set(const std::string& name, std::string value) { parameters[name] = std::move(value); }
  bool has(const std::string& name) const { return parameters.contains(name); }

  bool operator==(const EnvConfig&) const = default;
};

/// Named scalar channels. The channel list is shared between all
/// observations of one environment so copies stay cheap.
class Observation {
 public:
  using Channels = std::shared_ptr<const std::vector<std::string>>;

  Observation() = default;
  Observation(Channels channels, std::vector<double> values);

  const std::vector<std::string>& channels() const;
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  std::optional<double> find(std::string_view channel) const;
  /// Throws EnvError(MissingChannel).
  double at(std::string_view channel) const;

  bool operator==(const Observation& other) const;

 private:
  Channels channels_;
  std::vector<double> values_;
};

struct Action {
  int index = 0;
};

struct Transition {
  Observation obs;
  std::vector<std::string> events;
  double reward = 0.0;
  bool done = false;
  std::int64_t tick = 0;

  std::int64_t count(std::string_view event) const;
};

/// Reset/step contract shared by in-process and remote environments.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view id() const = 0;
  virtual int action_count() const = 0;
  virtual const Observation::Channels& channels() const = 0;

  /// Starts an episode in the configured situation. Deterministic for a
  /// fixed (config, seed).
  virtual Observation reset(const EnvConfig& config, std::uint64_t seed) = 0;

  /// Advances one tick. The transition's reward is left at zero; rewards are
  /// computed framework-side by reward_eval.
  virtual Transition step(Action action) = 0;
};

/// Base for in-process environments. Enforces the episode contract (cap,
/// absorbing done, tick numbering, action range) around on_reset/on_step.
class LocalEnvironment : public Environment {
 public:
  Observation reset(const EnvConfig& config, std::uint64_t seed) final;
  Transition step(Action action) final;

  std::int64_t tick() const { return tick_; }
  bool done() const { return done_; }

 protected:
  struct StepResult {
    std::vector<std::string> events;
    bool terminal = false;
  };

  /// Validates config parameters and initialises state.
  virtual void on_reset(const EnvConfig& config, std::uint64_t seed) = 0;
  virtual StepResult on_step(int action) = 0;
  virtual std::vector<double> observe() const = 0;

  Observation make_observation() const;

 private:
  std::int64_t tick_ = 0;
  std::int64_t cap_ = 0;
  bool done_ = false;
  bool started_ = false;
};

// Typed accessors for EnvConfig parameters; all throw InvalidConfig.
double param_real(const EnvConfig& config, const std::string& name, double fallback);
std::int64_t param_int(const EnvConfig& config, const std::string& name, std::int64_t fallback);
void require_known_parameters(const EnvConfig& config, const std::vector<std::string_view>& known,
                              std::string_view numbered_prefix = {});

std::string to_string(const ParamValue& value);

}  // namespace bdg::env
