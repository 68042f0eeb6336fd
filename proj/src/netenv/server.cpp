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

#include "bdg/netenv/server.h"

#include "bdg/netenv/protocol.h"

namespace bdg::netenv {

namespace {

constexpr std::chrono::milliseconds kPollInterval{100};

}  // namespace

EnvServer::EnvServer(Factory factory, const Address& address) : factory_(std::move(factory)) {
  const auto probe = factory_();
  env_id_ = std::string(probe->id());
  actions_ = probe->action_count();
  channels_ = *probe->channels();
  listener_ = Listener::bind(address);
}

EnvServer::~EnvServer() { stop(); }

void EnvServer::log(const std::string& line) {
  if (log_ == nullptr) return;
  std::lock_guard lock(log_mutex_);
  *log_ << line << std::endl;
}

void EnvServer::run() {
  while (!stop_.load()) {
    auto socket = listener_.accept(kPollInterval);
    reap(false);
    if (!socket) continue;
    auto& conn = connections_.emplace_back();
    conn.thread = std::thread([this, &conn, s = std::move(*socket)]() mutable {
      serve(std::move(s));
      conn.finished.store(true);
    });
  }
  reap(true);
}

void EnvServer::start() {
  runner_ = std::thread([this] { run(); });
}

void EnvServer::stop() {
  stop_.store(true);
  if (runner_.joinable()) runner_.join();
}

void EnvServer::reap(bool all) {
  for (auto it = connections_.begin(); it != connections_.end();) {
    if (all || it->finished.load()) {
      it->thread.join();
      it = connections_.erase(it);
    } else {
      ++it;
    }
  }
}

void EnvServer::serve(LineSocket socket) {
  log("connection opened");
  std::unique_ptr<env::Environment> environment;
  bool greeted = false;
  try {
    while (!stop_.load()) {
      const auto line = socket.read_line(kPollInterval);
      if (!line) continue;
      json request;
      try {
        request = parse_message(*line);
      } catch (const NetError&) {
        socket.write_line(make_error("malformed request").dump());
        continue;
      }
      const auto type = message_type(request);
      if (type == msg::kBye) {
        socket.write_line(make_bye().dump());
        break;
      }
      if (type == msg::kHello) {
        const auto v = request.find("v");
        if (v == request.end() || !v->is_number_integer() || v->get<int>() != kProtocolVersion) {
          socket.write_line(make_error("unsupported protocol version; server speaks v1").dump());
          continue;
        }
        greeted = true;
        socket.write_line(make_hello_ack({kProtocolVersion, actions_, channels_, env_id_}).dump());
        continue;
      }
      if (type != msg::kReset && type != msg::kStep) {
        socket.write_line(make_error("unknown message type '" + type + "'").dump());
        continue;
      }
      if (!greeted) {
        socket.write_line(make_error("handshake required before " + type).dump());
        continue;
      }
      json reply;
      try {
        if (type == msg::kReset) {
          const auto config_it = request.find("config");
          auto config = decode_config(config_it == request.end() ? json::object() : *config_it);
          if (config.env_id.empty()) config.env_id = env_id_;
          if (config.env_id != env_id_) {
            throw std::runtime_error("server hosts '" + env_id_ + "', not '" + config.env_id + "'");
          }
          const auto seed_it = request.find("seed");
          std::uint64_t seed = 0;
          if (seed_it != request.end()) {
            if (!seed_it->is_number_unsigned()) throw std::runtime_error("'seed' must be a non-negative integer");
            seed = seed_it->get<std::uint64_t>();
          }
          if (!environment) environment = factory_();
          reply = make_obs(environment->reset(config, seed));
        } else {
          const auto action = request.find("action");
          if (action == request.end() || !action->is_number_integer()) {
            throw std::runtime_error("'action' must be an integer");
          }
          if (!environment) throw std::runtime_error("step before reset");
          reply = make_transition(environment->step(env::Action{action->get<int>()}));
        }
      } catch (const std::exception& e) {
        reply = make_error(e.what());
      }
      socket.write_line(reply.dump());
    }
  } catch (const NetError& e) {
    if (e.code() != NetErrc::ConnectionClosed) log(std::string("connection error: ") + e.what());
  }
  log("connection closed");
}

}  // namespace bdg::netenv
