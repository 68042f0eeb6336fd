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

#include "bdg/netenv/socket.h"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

namespace bdg::netenv {

using std::chrono::milliseconds;

std::string_view errc_name(NetErrc code) {
  switch (code) {
    case NetErrc::ConnectTimeout: return "ConnectTimeout";
    case NetErrc::ConnectFailed: return "ConnectFailed";
    case NetErrc::VersionMismatch: return "VersionMismatch";
    case NetErrc::MalformedReply: return "MalformedReply";
    case NetErrc::RemoteError: return "RemoteError";
    case NetErrc::Timeout: return "Timeout";
    case NetErrc::ProtocolViolation: return "ProtocolViolation";
    case NetErrc::ConnectionClosed: return "ConnectionClosed";
    case NetErrc::MessageTooLarge: return "MessageTooLarge";
    case NetErrc::BadAddress: return "BadAddress";
  }
  return "Unknown";
}

NetError::NetError(NetErrc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

Address parse_address(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw NetError(NetErrc::BadAddress, "expected host:port, got '" + std::string(text) + "'");
  Address out;
  if (colon > 0) out.host = std::string(text.substr(0, colon));
  const auto digits = text.substr(colon + 1);
  unsigned port = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || port > 65535) {
    throw NetError(NetErrc::BadAddress, "bad port in '" + std::string(text) + "'");
  }
  out.port = static_cast<std::uint16_t>(port);
  return out;
}

Fd& Fd::operator=(Fd&& other) noexcept {
  if (this != &other) {
    reset();
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

Fd::~Fd() { reset(); }

void Fd::reset() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

namespace {

std::string errno_text() { return std::strerror(errno); }

int poll_one(int fd, short events, milliseconds timeout) {
  pollfd p{fd, events, 0};
  for (;;) {
    const int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
    if (rc < 0 && errno == EINTR) continue;
    return rc < 0 ? -1 : (rc == 0 ? 0 : p.revents);
  }
}

}  // namespace

LineSocket LineSocket::connect(const Address& address, milliseconds timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  const std::string port = std::to_string(address.port);
  if (const int rc = ::getaddrinfo(address.host.c_str(), port.c_str(), &hints, &found); rc != 0) {
    throw NetError(NetErrc::ConnectFailed, address.host + ": " + ::gai_strerror(rc));
  }
  std::string last_error = "no addresses";
  bool timed_out = false;
  for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
    Fd fd(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
    if (!fd.valid()) continue;
    const int flags = ::fcntl(fd.get(), F_GETFL);
    ::fcntl(fd.get(), F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd.get(), ai->ai_addr, ai->ai_addrlen);
    if (rc < 0 && errno == EINPROGRESS) {
      const int ready = poll_one(fd.get(), POLLOUT, timeout);
      if (ready == 0) {
        timed_out = true;
        continue;
      }
      int err = 0;
      socklen_t len = sizeof err;
      ::getsockopt(fd.get(), SOL_SOCKET, SO_ERROR, &err, &len);
      rc = err == 0 ? 0 : -1;
      errno = err;
    }
    if (rc < 0) {
      last_error = errno_text();
      continue;
    }
    ::fcntl(fd.get(), F_SETFL, flags);
    const int one = 1;
    ::setsockopt(fd.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    ::freeaddrinfo(found);
    return LineSocket(std::move(fd));
  }
  ::freeaddrinfo(found);
  const std::string where = address.host + ":" + port;
  if (timed_out) throw NetError(NetErrc::ConnectTimeout, "no connection to " + where + " within timeout");
  throw NetError(NetErrc::ConnectFailed, where + ": " + last_error);
}

void LineSocket::write_line(std::string_view line) {
  if (line.size() + 1 > kMaxMessageBytes) throw NetError(NetErrc::MessageTooLarge, "outgoing message over 1 MiB");
  std::string data(line);
  data.push_back('\n');
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd_.get(), data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw NetError(NetErrc::ConnectionClosed, "send failed: " + errno_text());
    sent += static_cast<std::size_t>(n);
  }
}

bool LineSocket::fill(milliseconds timeout) {
  const int ready = poll_one(fd_.get(), POLLIN, timeout);
  if (ready == 0) return false;
  char chunk[65536];
  ssize_t n = 0;
  do {
    n = ::recv(fd_.get(), chunk, sizeof chunk, 0);
  } while (n < 0 && errno == EINTR);
  if (n <= 0) throw NetError(NetErrc::ConnectionClosed, "peer closed the connection");
  buffer_.append(chunk, static_cast<std::size_t>(n));
  return true;
}

std::optional<std::string> LineSocket::read_line(milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    if (const auto end = buffer_.find('\n'); end != std::string::npos) {
      if (end + 1 > kMaxMessageBytes) throw NetError(NetErrc::MessageTooLarge, "incoming message over 1 MiB");
      std::string line = buffer_.substr(0, end);
      buffer_.erase(0, end + 1);
      return line;
    }
    if (buffer_.size() >= kMaxMessageBytes) throw NetError(NetErrc::MessageTooLarge, "incoming message over 1 MiB");
    const auto left = std::chrono::duration_cast<milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() < 0) return std::nullopt;
    if (!fill(left)) return std::nullopt;
  }
}

bool LineSocket::has_pending() {
  if (!buffer_.empty()) return true;
  return poll_one(fd_.get(), POLLIN, milliseconds(0)) > 0;
}

void LineSocket::shutdown() {
  if (fd_.valid()) ::shutdown(fd_.get(), SHUT_RDWR);
}

Listener Listener::bind(const Address& address) {
  Listener out;
  out.fd_ = Fd(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!out.fd_.valid()) throw NetError(NetErrc::ConnectFailed, "socket: " + errno_text());
  const int one = 1;
  ::setsockopt(out.fd_.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(address.port);
  if (::inet_pton(AF_INET, address.host.c_str(), &addr.sin_addr) != 1) {
    throw NetError(NetErrc::BadAddress, "listen host must be an IPv4 address, got '" + address.host + "'");
  }
  if (::bind(out.fd_.get(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
      ::listen(out.fd_.get(), 16) < 0) {
    throw NetError(NetErrc::ConnectFailed, "bind " + address.host + ":" + std::to_string(address.port) + ": " +
                                               errno_text());
  }
  socklen_t len = sizeof addr;
  ::getsockname(out.fd_.get(), reinterpret_cast<sockaddr*>(&addr), &len);
  out.port_ = ntohs(addr.sin_port);
  return out;
}

std::optional<LineSocket> Listener::accept(milliseconds timeout) {
  if (poll_one(fd_.get(), POLLIN, timeout) <= 0) return std::nullopt;
  Fd conn(::accept4(fd_.get(), nullptr, nullptr, SOCK_CLOEXEC));
  if (!conn.valid()) return std::nullopt;
  const int one = 1;
  ::setsockopt(conn.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return LineSocket(std::move(conn));
}

}  // namespace bdg::netenv
