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

#include <atomic>
#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "bdg/env/environment.h"
#include "bdg/netenv/socket.h"

namespace bdg::netenv {

/// Reference server exposing one in-process environment. Each connection
/// gets its own environment instance and thread.
class EnvServer {
 public:
  using Factory = std::function<std::unique_ptr<env::Environment>()>;

  /// Binds immediately so port() is valid before run(). Throws NetError.
  EnvServer(Factory factory, const Address& address);
  ~EnvServer();
  EnvServer(const EnvServer&) = delete;
  EnvServer& operator=(const EnvServer&) = delete;

  std::uint16_t port() const { return listener_.port(); }
  const std::string& env_id() const { return env_id_; }

  /// Serves until stop(); blocks the calling thread.
  void run();
  /// Runs on a background thread.
  void start();
  /// Idempotent; joins all connection threads.
  void stop();

  /// Optional connection log (one line per connect/disconnect).
  void set_log(std::ostream* log) { log_ = log; }

 private:
  struct Connection {
    std::thread thread;
    std::atomic<bool> finished{false};
  };

  void serve(LineSocket socket);
  void reap(bool all);
  void log(const std::string& line);

  Factory factory_;
  std::string env_id_;
  int actions_ = 0;
  std::vector<std::string> channels_;
  Listener listener_;
  std::atomic<bool> stop_{false};
  std::thread runner_;
  std::list<Connection> connections_;
  std::mutex log_mutex_;
  std::ostream* log_ = nullptr;
};

}  // namespace bdg::netenv
