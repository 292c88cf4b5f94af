// Copyright 2026 The LGCA Authors. All Rights Reserved.
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

#include "lgca/wire.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "lgca/error.hpp"

namespace lgca::wire {

std::string encode_frame(const nlohmann::json& message) {
  const std::string payload = message.dump();
  if (payload.size() > kMaxFrameBytes) {
    throw InvalidParams("frame payload too large");
  }
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::string out;
  out.reserve(4 + payload.size());
  out.push_back(static_cast<char>((n >> 24) & 0xFF));
  out.push_back(static_cast<char>((n >> 16) & 0xFF));
  out.push_back(static_cast<char>((n >> 8) & 0xFF));
  out.push_back(static_cast<char>(n & 0xFF));
  out += payload;
  return out;
}

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.release();
  }
  return *this;
}

Socket::~Socket() { close(); }

int Socket::release() noexcept {
  const int fd = fd_;
  fd_ = -1;
  return fd;
}

void Socket::close() noexcept {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

Socket Socket::connect(const std::string& host, int port, int timeout_ms) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port_str = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res); rc != 0) {
    throw EncoderUnavailable("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  std::string last_error = "no addresses";
  Socket sock;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    Socket candidate(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (!candidate.valid()) {
      last_error = std::strerror(errno);
      continue;
    }
    timeval tv{};
    tv.tv_sec = timeout_ms / 1000;
    tv.tv_usec = (timeout_ms % 1000) * 1000;
    ::setsockopt(candidate.fd(), SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    ::setsockopt(candidate.fd(), SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
    int one = 1;
    ::setsockopt(candidate.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    if (::connect(candidate.fd(), ai->ai_addr, ai->ai_addrlen) == 0) {
      sock = std::move(candidate);
      break;
    }
    last_error = std::strerror(errno);
  }
  ::freeaddrinfo(res);
  if (!sock.valid()) {
    throw EncoderUnavailable("cannot connect to " + host + ":" + port_str + ": " + last_error);
  }
  return sock;
}

void Socket::send_all(std::string_view bytes) const {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) {
      continue;
    }
    if (n <= 0) {
      throw EncoderUnavailable(std::string("send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
}

void Socket::recv_exact(char* out, std::size_t n) const {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t r = ::recv(fd_, out + got, n - got, 0);
    if (r < 0 && errno == EINTR) {
      continue;
    }
    if (r == 0) {
      throw EncoderUnavailable("connection closed by encoder");
    }
    if (r < 0) {
      throw EncoderUnavailable(std::string("receive failed: ") + std::strerror(errno));
    }
    got += static_cast<std::size_t>(r);
  }
}

void Socket::send_frame(const nlohmann::json& message) const { send_all(encode_frame(message)); }

nlohmann::json Socket::recv_frame() const {
  unsigned char head[4];
  recv_exact(reinterpret_cast<char*>(head), 4);
  const std::uint32_t n = (std::uint32_t{head[0]} << 24) | (std::uint32_t{head[1]} << 16) |
                          (std::uint32_t{head[2]} << 8) | std::uint32_t{head[3]};
  if (n > kMaxFrameBytes) {
    throw EncoderUnavailable("frame too large: " + std::to_string(n) + " bytes");
  }
  std::string payload(n, '\0');
  recv_exact(payload.data(), n);
  try {
    return nlohmann::json::parse(payload);
  } catch (const nlohmann::json::parse_error&) {
    throw EncoderUnavailable("encoder sent a non-JSON frame");
  }
}

}  // namespace lgca::wire
