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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bdg::netenv {

enum class NetErrc {
  ConnectTimeout,
  ConnectFailed,
  VersionMismatch,
  MalformedReply,
  RemoteError,
  Timeout,
  ProtocolViolation,
  ConnectionClosed,
  MessageTooLarge,
  BadAddress,
};

std::string_view errc_name(NetErrc code);

class NetError : public std::runtime_error {
 public:
  NetError(NetErrc code, const std::string& message);
  NetErrc code() const { return code_; }

 private:
  NetErrc code_;
};

inline constexpr std::size_t kMaxMessageBytes = 1 << 20;

struct Address {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
};

/// "host:port" or ":port". Throws NetError(BadAddress).
Address parse_address(std::string_view text);

/// Owning file descriptor.
class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Fd& operator=(Fd&& other) noexcept;
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd();

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void reset();

 private:
  int fd_ = -1;
};

/// Newline-framed messages over a connected TCP socket.
class LineSocket {
 public:
  explicit LineSocket(Fd fd) : fd_(std::move(fd)) {}

  /// Throws NetError(ConnectTimeout | ConnectFailed).
  static LineSocket connect(const Address& address, std::chrono::milliseconds timeout);

  /// Sends `line` plus the terminator.
  void write_line(std::string_view line);

  /// Next line without its terminator, or nullopt if nothing arrived before
  /// the deadline. Throws NetError(ConnectionClosed | MessageTooLarge).
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

  /// True when bytes are buffered or waiting on the socket.
  bool has_pending();

  void shutdown();
  int fd() const { return fd_.get(); }

 private:
  bool fill(std::chrono::milliseconds timeout);

  Fd fd_;
  std::string buffer_;
};

/// Listening TCP socket; port 0 picks a free port.
class Listener {
 public:
  static Listener bind(const Address& address);

  std::uint16_t port() const { return port_; }
  /// Waits up to `timeout` for a connection.
  std::optional<LineSocket> accept(std::chrono::milliseconds timeout);

 private:
  Fd fd_;
  std::uint16_t port_ = 0;
};

}  // namespace bdg::netenv
