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

#include <chrono>
#include <string>

#include "bdg/env/environment.h"
#include "bdg/netenv/protocol.h"
#include "bdg/netenv/socket.h"

namespace bdg::netenv {

inline constexpr std::chrono::milliseconds kDefaultTimeout{5000};

/// Environment adapter speaking the JSON-lines protocol. One request is in
/// flight at a time; any timeout or protocol fault leaves the session unusable.
class RemoteEnvironment final : public env::Environment {
 public:
  /// Connects and completes the handshake.
  /// Throws NetError(ConnectTimeout | ConnectFailed | VersionMismatch | MalformedReply).
  static RemoteEnvironment connect(const Address& address,
                                   std::chrono::milliseconds timeout = kDefaultTimeout);

  RemoteEnvironment(RemoteEnvironment&&) noexcept = default;
  RemoteEnvironment& operator=(RemoteEnvironment&&) noexcept = default;
  ~RemoteEnvironment() override;

  std::string_view id() const override { return env_id_; }
  int action_count() const override { return actions_; }
  const env::Observation::Channels& channels() const override { return channels_; }
  int version() const { return version_; }

  /// Throws NetError(RemoteError | Timeout | MalformedReply | ProtocolViolation).
  env::Observation reset(const env::EnvConfig& config, std::uint64_t seed) override;
  env::Transition step(env::Action action) override;

  /// Sends bye and closes; further calls fail with ConnectionClosed.
  void close();

 private:
  RemoteEnvironment(LineSocket socket, std::chrono::milliseconds timeout) : socket_(std::move(socket)), timeout_(timeout) {}

  json request(const json& message, const char* expected);

  LineSocket socket_;
  std::chrono::milliseconds timeout_;
  std::string env_id_;
  int actions_ = 0;
  int version_ = 0;
  env::Observation::Channels channels_;
  bool usable_ = true;
};

}  // namespace bdg::netenv
