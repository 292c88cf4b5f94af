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

#ifndef LGCA_WIRE_HPP
#define LGCA_WIRE_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

// Encoder sidecar framing: a 4-byte big-endian payload length followed by
// a UTF-8 JSON payload.
namespace lgca::wire {

inline constexpr std::uint32_t kMaxFrameBytes = 64u << 20;

/// Length prefix + payload, ready to send.
std::string encode_frame(const nlohmann::json& message);

/// Owns a connected socket; closes it on destruction.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) noexcept : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  /// Connects with send/receive timeouts. Throws EncoderUnavailable.
  static Socket connect(const std::string& host, int port, int timeout_ms);

  int fd() const noexcept { return fd_; }
  bool valid() const noexcept { return fd_ >= 0; }
  int release() noexcept;
  void close() noexcept;

  /// Throws EncoderUnavailable on short writes or timeouts.
  void send_frame(const nlohmann::json& message) const;
  /// Throws EncoderUnavailable on EOF, timeout, oversize or non-JSON payloads.
  nlohmann::json recv_frame() const;

 private:
  void send_all(std::string_view bytes) const;
  void recv_exact(char* out, std::size_t n) const;

  int fd_ = -1;
};

}  // namespace lgca::wire

#endif  // LGCA_WIRE_HPP
