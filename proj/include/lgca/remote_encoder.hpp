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

#ifndef LGCA_REMOTE_ENCODER_HPP
#define LGCA_REMOTE_ENCODER_HPP

#include <cstdint>
#include <mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "lgca/embedding.hpp"
#include "lgca/wire.hpp"

namespace lgca {

/**
 * Client for the encoder sidecar. Connects and performs the hello handshake
 * on construction; the handshake fixes dim(). Requests on one client are
 * serialized over a single connection, so concurrent callers are isolated
 * but unordered relative to each other. Returned vectors are re-normalized.
 */
class RemoteEncoder final : public Encoder {
 public:
  struct Options {
    std::string host = "127.0.0.1";
    int port = 0;
    int out_size = 224;
    int timeout_ms = 10000;
  };

  explicit RemoteEncoder(Options options);

  std::size_t dim() const noexcept override { return dim_; }
  std::string name() const override { return "remote:" + model_; }

  EmbeddingVector embed_image_patch(const ImageFrame& image, const Region& region) const override;
  EmbeddingVector embed_image(const ImageFrame& image) const override;
  EmbeddingVector embed_text(std::string_view text) const override;

  /// Pipelines the whole batch on the connection, then collects responses.
  std::vector<EmbeddingVector> batch_embed(std::span<const EmbedRequest> requests) const override;

 private:
  nlohmann::json make_request(const EmbedRequest& request, std::uint64_t id) const;
  EmbeddingVector parse_response(const nlohmann::json& response, std::uint64_t id) const;
  EmbeddingVector round_trip(const EmbedRequest& request) const;

  Options options_;
  std::size_t dim_ = 0;
  std::string model_;
  mutable std::mutex mutex_;
  mutable wire::Socket socket_;
  mutable std::uint64_t next_id_ = 1;
};

}  // namespace lgca

#endif  // LGCA_REMOTE_ENCODER_HPP
