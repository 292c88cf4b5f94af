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

#ifndef LGCA_EMBEDDING_HPP
#define LGCA_EMBEDDING_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lgca/geometry.hpp"

namespace lgca {

/// Unit-norm vector in the joint image/text space.
class EmbeddingVector {
 public:
  /// Scales `raw` to unit L2 norm. Throws InvalidParams for a zero or
  /// non-finite vector, or fewer than two components.
  static EmbeddingVector normalized(std::vector<double> raw);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  bool operator==(const EmbeddingVector&) const = default;

 private:
  explicit EmbeddingVector(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

/// Image patch request. An empty region means the whole frame.
struct PatchRequest {
  const ImageFrame* image = nullptr;
  std::optional<Region> region;
};

struct TextRequest {
  std::string text;
};

using EmbedRequest = std::variant<PatchRequest, TextRequest>;

/**
 * Image and text encoder. Implementations are safe to call concurrently;
 * image and text embeddings share one dimension for the encoder lifetime.
 */
class Encoder {
 public:
  virtual ~Encoder() = default;

  virtual std::size_t dim() const noexcept = 0;
  virtual std::string name() const = 0;

  virtual EmbeddingVector embed_image_patch(const ImageFrame& image, const Region& region) const = 0;
  /// Embeds the whole frame, which need not be square.
  virtual EmbeddingVector embed_image(const ImageFrame& image) const = 0;
  /// Throws EmptyInput for an empty string.
  virtual EmbeddingVector embed_text(std::string_view text) const = 0;

  /// Order-preserving; equal to element-wise calls. The first failure is
  /// rethrown with its index in the message.
  virtual std::vector<EmbeddingVector> batch_embed(std::span<const EmbedRequest> requests) const;

 protected:
  EmbeddingVector embed_one(const EmbedRequest& request) const;
};

/// Rethrows the in-flight library exception as the same type, prefixed with
/// the batch index.
[[noreturn]] void rethrow_with_index(std::size_t index);

/// Builds an encoder from "toy:PATH" or "remote:HOST:PORT".
std::unique_ptr<Encoder> make_encoder(std::string_view spec, int out_size = 224);

}  // namespace lgca

#endif  // LGCA_EMBEDDING_HPP
