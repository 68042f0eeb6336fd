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
#include <string>
#include <vector>

#include "bdg/env/environment.h"
#include "json.hpp"

namespace bdg::netenv {

using json = nlohmann::json;

inline constexpr int kProtocolVersion = 1;

namespace msg {
inline constexpr const char* kHello = "hello";
inline constexpr const char* kHelloAck = "hello_ack";
inline constexpr const char* kReset = "reset";
inline constexpr const char* kObs = "obs";
inline constexpr const char* kStep = "step";
inline constexpr const char* kTransition = "transition";
inline constexpr const char* kError = "error";
inline constexpr const char* kBye = "bye";
}  // namespace msg

struct HelloAck {
  int version = 0;
  int actions = 0;
  std::vector<std::string> channels;
  std::string env_id;
};

json make_hello(int version = kProtocolVersion);
json make_hello_ack(const HelloAck& ack);
json make_reset(const env::EnvConfig& config, std::uint64_t seed);
json make_obs(const env::Observation& obs);
json make_step(int action);
json make_transition(const env::Transition& t);
json make_error(const std::string& message);
json make_bye();

/// Parses one line into a JSON object with a string "t".
/// Throws NetError(MalformedReply).
json parse_message(const std::string& line);
std::string message_type(const json& message);

// Decoders throw NetError(MalformedReply) on shape errors.
HelloAck decode_hello_ack(const json& message);
env::EnvConfig decode_config(const json& config);
/// Maps an {"name": value} object onto `channels`; missing or extra names
/// are malformed.
env::Observation decode_obs(const json& obs, const env::Observation::Channels& channels);
env::Transition decode_transition(const json& message, const env::Observation::Channels& channels);

json encode_config(const env::EnvConfig& config);
json encode_obs_values(const env::Observation& obs);

}  // namespace bdg::netenv
