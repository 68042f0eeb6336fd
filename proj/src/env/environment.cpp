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

#include "bdg/env/environment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bdg::env {

std::string_view errc_name(EnvErrc code) {
  switch (code) {
    case EnvErrc::InvalidConfig: return "InvalidConfig";
    case EnvErrc::EpisodeFinished: return "EpisodeFinished";
    case EnvErrc::ActionOutOfRange: return "ActionOutOfRange";
    case EnvErrc::MissingChannel: return "MissingChannel";
    case EnvErrc::NotReset: return "NotReset";
    case EnvErrc::UnknownEnv: return "UnknownEnv";
  }
  return "?";
}

EnvError::EnvError(EnvErrc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

EnvError invalid_config(std::string_view parameter, std::string_view reason) {
  return EnvError(EnvErrc::InvalidConfig, std::string(parameter) + ": " + std::string(reason));
}

Observation::Observation(Channels channels, std::vector<double> values)
    : channels_(std::move(channels)), values_(std::move(values)) {}

const std::vector<std::string>& Observation::channels() const {
  static const std::vector<std::string> kEmpty;
  return channels_ ? *channels_ : kEmpty;
}

std::optional<double> Observation::find(std::string_view channel) const {
  const auto& names = channels();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == channel) return values_[i];
  }
  return std::nullopt;
}

double Observation::at(std::string_view channel) const {
  if (auto v = find(channel)) return *v;
  throw EnvError(EnvErrc::MissingChannel, std::string(channel));
}

bool Observation::operator==(const Observation& other) const {
  return channels() == other.channels() && values_ == other.values_;
}

std::int64_t Transition::count(std::string_view event) const {
  return std::count(events.begin(), events.end(), event);
}

Observation LocalEnvironment::reset(const EnvConfig& config, std::uint64_t seed) {
  if (config.episode_cap < 1) throw invalid_config("episode_cap", "must be >= 1");
  on_reset(config, seed);
  cap_ = config.episode_cap;
  tick_ = 0;
  done_ = false;
  started_ = true;
  return make_observation();
}

Transition LocalEnvironment::step(Action action) {
  if (!started_) throw EnvError(EnvErrc::NotReset, "step before reset");
  if (done_) throw EnvError(EnvErrc::EpisodeFinished, "episode finished");
  if (action.index < 0 || action.index >= action_count()) {
    throw EnvError(EnvErrc::ActionOutOfRange,
                   std::to_string(action.index) + " not in [0, " + std::to_string(action_count()) + ")");
  }
  StepResult result = on_step(action.index);
  ++tick_;
  done_ = result.terminal || tick_ >= cap_;
  return Transition{make_observation(), std::move(result.events), 0.0, done_, tick_};
}

Observation LocalEnvironment::make_observation() const { return Observation(channels(), observe()); }

namespace {

std::optional<double> parse_number(const std::string& text) {
  double value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

double param_real(const EnvConfig& config, const std::string& name, double fallback) {
  const auto it = config.parameters.find(name);
  if (it == config.parameters.end()) return fallback;
  double value = 0;
  if (const auto* d = std::get_if<double>(&it->second)) {
    value = *d;
  } else if (auto parsed = parse_number(std::get<std::string>(it->second))) {
    value = *parsed;
  } else {
    throw invalid_config(name, "expected a number, got '" + std::get<std::string>(it->second) + "'");
  }
  if (!std::isfinite(value)) throw invalid_config(name, "must be finite");
  return value;
}

std::int64_t param_int(const EnvConfig& config, const std::string& name, std::int64_t fallback) {
  if (!config.has(name)) return fallback;
  const double value = param_real(config, name, 0.0);
  if (value != std::floor(value) || std::abs(value) > 1e15) throw invalid_config(name, "expected an integer");
  return static_cast<std::int64_t>(value);
}

void require_known_parameters(const EnvConfig& config, const std::vector<std::string_view>& known,
                              std::string_view numbered_prefix) {
  for (const auto& [name, value] : config.parameters) {
    if (std::find(known.begin(), known.end(), name) != known.end()) continue;
    if (!numbered_prefix.empty() && name.size() > numbered_prefix.size() && name.starts_with(numbered_prefix) &&
        std::all_of(name.begin() + numbered_prefix.size(), name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    throw invalid_config(name, "unknown parameter for environment '" + config.env_id + "'");
  }
}

std::string to_string(const ParamValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  std::ostringstream out;
  out.precision(17);
  out << std::get<double>(value);
  return out.str();
}

}  // namespace bdg::env
