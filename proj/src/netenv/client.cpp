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

#include "bdg/netenv/client.h"

#include "bdg/netenv/protocol.h"

namespace bdg::netenv {

RemoteEnvironment RemoteEnvironment::connect(const Address& address, std::chrono::milliseconds timeout) {
  RemoteEnvironment out(LineSocket::connect(address, timeout), timeout);
  out.socket_.write_line(make_hello().dump());
  std::optional<std::string> line;
  try {
    line = out.socket_.read_line(timeout);
  } catch (const NetError& e) {
    if (e.code() == NetErrc::ConnectionClosed) throw NetError(NetErrc::ConnectFailed, "server closed during handshake");
    throw;
  }
  if (!line) throw NetError(NetErrc::ConnectTimeout, "no hello_ack within " + std::to_string(timeout.count()) + " ms");
  const json reply = parse_message(*line);
  const auto type = message_type(reply);
  if (type == msg::kError) {
    const auto it = reply.find("message");
    const std::string text = it != reply.end() && it->is_string() ? it->get<std::string>() : "handshake rejected";
    throw NetError(NetErrc::VersionMismatch, text);
  }
  if (type != msg::kHelloAck) throw NetError(NetErrc::MalformedReply, "expected hello_ack, got '" + type + "'");
  const auto ack = decode_hello_ack(reply);
  if (ack.version != kProtocolVersion) {
    throw NetError(NetErrc::VersionMismatch, "server speaks v" + std::to_string(ack.version) + ", client speaks v" +
                                                 std::to_string(kProtocolVersion));
  }
  out.version_ = ack.version;
  out.actions_ = ack.actions;
  out.env_id_ = ack.env_id;
  out.channels_ = std::make_shared<const std::vector<std::string>>(ack.channels);
  return out;
}

RemoteEnvironment::~RemoteEnvironment() {
  try {
    close();
  } catch (...) {
  }
}

void RemoteEnvironment::close() {
  if (!usable_ || socket_.fd() < 0) {
    usable_ = false;
    return;
  }
  usable_ = false;
  socket_.write_line(make_bye().dump());
  socket_.shutdown();
}

json RemoteEnvironment::request(const json& message, const char* expected) {
  if (!usable_) throw NetError(NetErrc::ConnectionClosed, "session is closed or failed earlier");
  // Any failure below poisons the session.
  usable_ = false;
  if (socket_.has_pending()) throw NetError(NetErrc::ProtocolViolation, "unsolicited data before request");
  socket_.write_line(message.dump());
  const auto line = socket_.read_line(timeout_);
  if (!line) throw NetError(NetErrc::Timeout, "no reply within " + std::to_string(timeout_.count()) + " ms");
  const json reply = parse_message(*line);
  if (socket_.has_pending()) throw NetError(NetErrc::ProtocolViolation, "more than one reply to a request");
  const auto type = message_type(reply);
  if (type == msg::kError) {
    usable_ = true;
    const auto it = reply.find("message");
    throw NetError(NetErrc::RemoteError, it != reply.end() && it->is_string() ? it->get<std::string>() : "");
  }
  if (type != expected) {
    throw NetError(NetErrc::ProtocolViolation, "expected '" + std::string(expected) + "' reply, got '" + type + "'");
  }
  usable_ = true;
  return reply;
}

env::Observation RemoteEnvironment::reset(const env::EnvConfig& config, std::uint64_t seed) {
  const json reply = request(make_reset(config, seed), msg::kObs);
  const auto it = reply.find("obs");
  if (it == reply.end()) {
    usable_ = false;
    throw NetError(NetErrc::MalformedReply, "missing field 'obs'");
  }
  try {
    return decode_obs(*it, channels_);
  } catch (...) {
    usable_ = false;
    throw;
  }
}

env::Transition RemoteEnvironment::step(env::Action action) {
  const json reply = request(make_step(action.index), msg::kTransition);
  try {
    return decode_transition(reply, channels_);
  } catch (...) {
    usable_ = false;
    throw;
  }
}

}  // namespace bdg::netenv
