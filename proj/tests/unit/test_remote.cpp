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

#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include <boost/beast/core/detail/base64.hpp>

#include "lgca/error.hpp"
#include "lgca/image_io.hpp"
#include "lgca/remote_encoder.hpp"
#include "lgca/wire.hpp"

using namespace lgca;
using nlohmann::json;

namespace {

// Single-threaded sidecar stand-in. Answers hello itself and hands every
// other request to `handler`; a null reply means "say nothing".
class StubServer {
 public:
  using Handler = std::function<json(const json&)>;

  StubServer(std::size_t dim, Handler handler) : dim_(dim), handler_(std::move(handler)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    REQUIRE(::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0);
    REQUIRE(::listen(listen_fd_, 8) == 0);
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    thread_ = std::thread([this] { serve(); });
  }

  ~StubServer() {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (client_fd_ >= 0) {
      ::shutdown(client_fd_, SHUT_RDWR);
    }
    thread_.join();
  }

  int port() const { return port_; }
  int requests() const { return requests_; }

 private:
  void serve() {
    while (true) {
      const int fd = ::accept(listen_fd_, nullptr, nullptr);
      if (fd < 0) {
        return;
      }
      client_fd_ = fd;
      wire::Socket conn(fd);
      try {
        while (true) {
          const json req = conn.recv_frame();
          if (req.value("op", "") == "hello") {
            conn.send_frame({{"dim", dim_}, {"model", "stub"}});
            continue;
          }
          ++requests_;
          const json reply = handler_(req);
          if (!reply.is_null()) {
            conn.send_frame(reply);
          }
        }
      } catch (const Error&) {
      }
      client_fd_ = -1;
    }
  }

  std::size_t dim_;
  Handler handler_;
  int listen_fd_ = -1;
  std::atomic<int> client_fd_{-1};
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::thread thread_;
};

// Text "tK" maps to 2 * e_K, so ordering and re-normalization are visible.
json basis_reply(const json& req, std::size_t dim) {
  std::vector<double> v(dim, 0.0);
  if (req["op"] == "embed_text") {
    v[std::stoul(req["text"].get<std::string>().substr(1)) % dim] = 2.0;
  } else {
    v[0] = 3.0;
    v[1] = 4.0;
  }
  return {{"id", req["id"]}, {"dim", dim}, {"embedding", v}};
}

int unused_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

ImageFrame gradient(int w, int h) {
  ImageFrame f("g", w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      f.at(x, y)[0] = static_cast<std::uint8_t>(x * 7);
      f.at(x, y)[1] = static_cast<std::uint8_t>(y * 5);
      f.at(x, y)[2] = 90;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("frames carry a big-endian length prefix") {
  const std::string frame = wire::encode_frame(json{{"op", "hello"}});
  const std::string body = R"({"op":"hello"})";
  REQUIRE(frame.size() == 4 + body.size());
  CHECK(static_cast<unsigned char>(frame[0]) == 0);
  CHECK(static_cast<unsigned char>(frame[3]) == body.size());
  CHECK(frame.substr(4) == body);
}

TEST_CASE("handshake fixes the dimension") {
  StubServer server(6, [](const json& r) { return basis_reply(r, 6); });
  const RemoteEncoder enc({"127.0.0.1", server.port()});
  CHECK(enc.dim() == 6);
  CHECK(enc.name() == "remote:stub");
}

TEST_CASE("remote embeddings are re-normalized") {
  StubServer server(4, [](const json& r) { return basis_reply(r, 4); });
  const RemoteEncoder enc({"127.0.0.1", server.port()});
  const auto t = enc.embed_text("t2");
  CHECK(t[2] == 1.0);
  const auto img = gradient(10, 8);
  const auto p = enc.embed_image_patch(img, {1, 1, 6});
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));
  CHECK(enc.embed_image(img)[1] == doctest::Approx(0.8));
}

TEST_CASE("image requests carry a resized PNG") {
  json seen;
  StubServer server(4, [&](const json& r) {
    seen = r;
    return basis_reply(r, 4);
  });
  const RemoteEncoder enc({"127.0.0.1", server.port(), 32});
  const auto img = gradient(20, 12);
  enc.embed_image_patch(img, {4, 2, 10});
  REQUIRE(seen["op"] == "embed_image");
  CHECK(seen["out_size"] == 32);
  const std::string b64 = seen["png_b64"];
  std::vector<std::uint8_t> bytes(boost::beast::detail::base64::decoded_size(b64.size()));
  const auto n = boost::beast::detail::base64::decode(bytes.data(), b64.data(), b64.size()).first;
  bytes.resize(n);
  const ImageFrame decoded = decode_image(bytes, "d");
  CHECK(decoded.width() == 32);
  CHECK(decoded.height() == 32);
  CHECK(decoded.pixels() == extract_patch(img, {4, 2, 10}, 32).pixels());
}

TEST_CASE("wrong-length embedding raises DimMismatch") {
  StubServer server(4, [](const json& r) { return basis_reply(r, 5); });
  const RemoteEncoder enc({"127.0.0.1", server.port()});
  CHECK_THROWS_AS(enc.embed_text("t1"), DimMismatch);
}

TEST_CASE("server error raises EncoderUnavailable") {
  StubServer server(4, [](const json& r) { return json{{"id", r["id"]}, {"error", "boom"}}; });
  const RemoteEncoder enc({"127.0.0.1", server.port()});
  CHECK_THROWS_AS(enc.embed_text("t1"), EncoderUnavailable);
}

TEST_CASE("mismatched response id raises EncoderUnavailable") {
  StubServer server(4, [](const json& r) {
    json out = basis_reply(r, 4);
    out["id"] = r["id"].get<std::uint64_t>() + 100;
    return out;
  });
  const RemoteEncoder enc({"127.0.0.1", server.port()});
  CHECK_THROWS_AS(enc.embed_text("t1"), EncoderUnavailable);
}

TEST_CASE("unreachable or silent server raises EncoderUnavailable") {
  CHECK_THROWS_AS(RemoteEncoder({"127.0.0.1", unused_port(), 224, 500}), EncoderUnavailable);
  StubServer server(4, [](const json&) { return json(); });
  const RemoteEncoder enc({"127.0.0.1", server.port(), 224, 200});
  CHECK_THROWS_AS(enc.embed_text("t1"), EncoderUnavailable);
}

TEST_CASE("remote batch preserves order and ids") {
  std::vector<std::uint64_t> ids;
  StubServer server(8, [&](const json& r) {
    ids.push_back(r["id"]);
    return basis_reply(r, 8);
  });
  const RemoteEncoder enc({"127.0.0.1", server.port(), 16});
  const auto img = gradient(12, 12);
  std::vector<EmbedRequest> reqs;
  for (int i = 0; i < 40; ++i) {
    if (i % 5 == 0) {
      reqs.emplace_back(PatchRequest{&img, Region{0, 0, 6}});
    } else {
      reqs.emplace_back(TextRequest{"t" + std::to_string(i)});
    }
  }
  const auto out = enc.batch_embed(reqs);
  REQUIRE(out.size() == reqs.size());
  for (int i = 0; i < 40; ++i) {
    if (i % 5 == 0) {
      CHECK(out[i][0] == doctest::Approx(0.6));
    } else {
      CHECK(out[i][i % 8] == 1.0);
    }
  }
  for (std::size_t i = 1; i < ids.size(); ++i) {
    CHECK(ids[i] == ids[i - 1] + 1);
  }
  CHECK(enc.batch_embed({}).empty());
}

TEST_CASE("remote batch names the failing item") {
  StubServer server(4, [](const json& r) {
    if (r.value("text", "") == "t3") {
      return json{{"id", r["id"]}, {"error", "bad"}};
    }
    return basis_reply(r, 4);
  });
  const RemoteEncoder enc({"127.0.0.1", server.port()});
  const std::vector<EmbedRequest> reqs{TextRequest{"t1"}, TextRequest{"t3"}, TextRequest{"t2"}};
  try {
    enc.batch_embed(reqs);
    FAIL("expected EncoderUnavailable");
  } catch (const EncoderUnavailable& e) {
    CHECK(std::string(e.what()).find("batch item 1") != std::string::npos);
  }
  CHECK(enc.embed_text("t2")[2] == 1.0);
}

TEST_CASE("concurrent callers get their own results") {
  StubServer server(8, [](const json& r) { return basis_reply(r, 8); });
  const RemoteEncoder enc({"127.0.0.1", server.port()});
  std::atomic<int> wrong{0};
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < 4; ++t) {
      pool.emplace_back([&, t] {
        for (int i = 0; i < 50; ++i) {
          const int k = (t * 50 + i) % 8;
          if (enc.embed_text("t" + std::to_string(k))[k] != 1.0) {
            ++wrong;
          }
        }
      });
    }
  }
  CHECK(wrong == 0);
  CHECK(server.requests() == 200);
}

TEST_CASE("make_encoder connects to a remote spec") {
  StubServer server(4, [](const json& r) { return basis_reply(r, 4); });
  const auto enc = make_encoder("remote:127.0.0.1:" + std::to_string(server.port()));
  CHECK(enc->dim() == 4);
  CHECK(enc->embed_text("t1")[1] == 1.0);
}

TEST_CASE("oversized frame header is rejected") {
  int fds[2];
  REQUIRE(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) == 0);
  wire::Socket reader(fds[0]);
  const unsigned char header[4] = {0xFF, 0xFF, 0xFF, 0xFF};
  REQUIRE(::write(fds[1], header, 4) == 4);
  CHECK_THROWS_AS(reader.recv_frame(), EncoderUnavailable);
  ::close(fds[1]);
}
