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

#include "bdg/netenv/protocol.h"

#include <cmath>
#include <algorithm>

#include "bdg/netenv/socket.h"

namespace bdg::netenv {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw NetError(NetErrc::MalformedReply, what); }

const json& field(const json& object, const char* name) {
  const auto it = object.find(name);
  if (it == object.end()) malformed(std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& value, const std::string& what) {
  if (!value.is_number()) malformed(what + " must be a number");
  return value.get<double>();
}

}  // namespace

json make_hello(int version) { return {{"t", msg::kHello}, {"v", version}}; }

json make_hello_ack(const HelloAck& ack) {
  return {{"t", msg::kHelloAck}, {"v", ack.version}, {"actions", ack.actions},
          {"channels", ack.channels}, {"env", ack.env_id}};
}

json encode_config(const env::EnvConfig& config) {
  json params = json::object();
  for (const auto& [name, value] : config.parameters) {
    if (const auto* d = std::get_if<double>(&value)) {
      params[name] = *d;
    } else {
      params[name] = std::get<std::string>(value);
    }
  }
  return {{"env", config.env_id}, {"episode_cap", config.episode_cap}, {"params", params}};
}

json make_reset(const env::EnvConfig& config, std::uint64_t seed) {
  return {{"t", msg::kReset}, {"config", encode_config(config)}, {"seed", seed}};
}

json encode_obs_values(const env::Observation& obs) {
  json out = json::object();
  const auto& names = obs.channels();
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = obs.values()[i];
  return out;
}

json make_obs(const env::Observation& obs) { return {{"t", msg::kObs}, {"obs", encode_obs_values(obs)}}; }

json make_step(int action) { return {{"t", msg::kStep}, {"action", action}}; }

json make_transition(const env::Transition& t) {
  return {{"t", msg::kTransition}, {"obs", encode_obs_values(t.obs)}, {"events", t.events},
          {"done", t.done}, {"tick", t.tick}};
}

json make_error(const std::string& message) { return {{"t", msg::kError}, {"message", message}}; }

json make_bye() { return {{"t", msg::kBye}}; }

json parse_message(const std::string& line) {
  json out = json::parse(line, nullptr, false);
  if (out.is_discarded()) malformed("not valid JSON");
  if (!out.is_object()) malformed("message is not a JSON object");
  if (!field(out, "t").is_string()) malformed("'t' must be a string");
  return out;
}

std::string message_type(const json& message) { return field(message, "t").get<std::string>(); }

HelloAck decode_hello_ack(const json& message) {
  HelloAck ack;
  const auto& v = field(message, "v");
  if (!v.is_number_integer()) malformed("'v' must be an integer");
  ack.version = v.get<int>();
  const auto& actions = field(message, "actions");
  if (!actions.is_number_integer() || actions.get<std::int64_t>() < 1 || actions.get<std::int64_t>() > 1 << 16) {
    malformed("'actions' must be a positive integer");
  }
  ack.actions = actions.get<int>();
  const auto& channels = field(message, "channels");
  if (!channels.is_array()) malformed("'channels' must be an array");
  for (const auto& c : channels) {
    if (!c.is_string()) malformed("channel names must be strings");
    ack.channels.push_back(c.get<std::string>());
  }
  if (const auto it = message.find("env"); it != message.end()) {
    if (!it->is_string()) malformed("'env' must be a string");
    ack.env_id = it->get<std::string>();
  }
  return ack;
}

env::EnvConfig decode_config(const json& config) {
  if (!config.is_object()) malformed("'config' must be an object");
  env::EnvConfig out;
  if (const auto it = config.find("env"); it != config.end()) {
    if (!it->is_string()) malformed("'env' must be a string");
    out.env_id = it->get<std::string>();
  }
  if (const auto it = config.find("episode_cap"); it != config.end()) {
    if (!it->is_number_integer()) malformed("'episode_cap' must be an integer");
    out.episode_cap = it->get<std::int64_t>();
  }
  if (const auto it = config.find("params"); it != config.end()) {
    if (!it->is_object()) malformed("'params' must be an object");
    for (const auto& [name, value] : it->items()) {
      if (value.is_number()) {
        out.set(name, value.get<double>());
      } else if (value.is_string()) {
        out.set(name, value.get<std::string>());
      } else {
        malformed("parameter '" + name + "' must be a number or string");
      }
    }
  }
  return out;
}

env::Observation decode_obs(const json& obs, const env::Observation::Channels& channels) {
  if (!obs.is_object()) malformed("'obs' must be an object");
  std::vector<double> values;
  values.reserve(channels->size());
  for (const auto& name : *channels) {
    const auto it = obs.find(name);
    if (it == obs.end()) malformed("observation is missing channel '" + name + "'");
    values.push_back(number(*it, "channel '" + name + "'"));
  }
  if (obs.size() != channels->size()) {
    for (const auto& [name, value] : obs.items()) {
      if (std::find(channels->begin(), channels->end(), name) == channels->end()) {
        malformed("observation has undeclared channel '" + name + "'");
      }
    }
  }
  return env::Observation(channels, std::move(values));
}

env::Transition decode_transition(const json& message, const env::Observation::Channels& channels) {
  env::Transition t;
  t.obs = decode_obs(field(message, "obs"), channels);
  const auto& events = field(message, "events");
  if (!events.is_array()) malformed("'events' must be an array");
  for (const auto& e : events) {
    if (!e.is_string()) malformed("event names must be strings");
    t.events.push_back(e.get<std::string>());
  }
  const auto& done = field(message, "done");
  if (!done.is_boolean()) malformed("'done' must be a boolean");
  t.done = done.get<bool>();
  const auto& tick = field(message, "tick");
  if (!tick.is_number_integer()) malformed("'tick' must be an integer");
  t.tick = tick.get<std::int64_t>();
  return t;
}

}  // namespace bdg::netenv
