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

#include "lgca/embedding.hpp"

#include <cmath>
#include <charconv>

#include "lgca/error.hpp"
#include "lgca/remote_encoder.hpp"
#include "lgca/toy_encoder.hpp"

namespace lgca {

EmbeddingVector EmbeddingVector::normalized(std::vector<double> raw) {
  if (raw.size() < 2) {
    throw InvalidParams("embedding dimension must be at least 2");
  }
  double sq = 0.0;
  for (const double x : raw) {
    if (!std::isfinite(x)) {
      throw InvalidParams("embedding has non-finite component");
    }
    sq += x * x;
  }
  if (!(sq > 0.0)) {
    throw InvalidParams("cannot normalize a zero embedding");
  }
  const double norm = std::sqrt(sq);
  for (double& x : raw) {
    x /= norm;
  }
  return EmbeddingVector(std::move(raw));
}

EmbeddingVector Encoder::embed_one(const EmbedRequest& request) const {
  if (const auto* patch = std::get_if<PatchRequest>(&request)) {
    if (patch->image == nullptr) {
      throw InvalidParams("patch request without an image");
    }
    return patch->region ? embed_image_patch(*patch->image, *patch->region)
                         : embed_image(*patch->image);
  }
  return embed_text(std::get<TextRequest>(request).text);
}

std::vector<EmbeddingVector> Encoder::batch_embed(std::span<const EmbedRequest> requests) const {
  std::vector<EmbeddingVector> out;
  out.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    try {
      out.push_back(embed_one(requests[i]));
    } catch (const Error&) {
      rethrow_with_index(i);
    }
  }
  return out;
}

void rethrow_with_index(std::size_t index) {
  const std::string prefix = "batch item " + std::to_string(index) + ": ";
  try {
    throw;
  } catch (const EncoderUnavailable& e) {
    throw EncoderUnavailable(prefix + e.what());
  } catch (const DimMismatch& e) {
    throw DimMismatch(prefix + e.what());
  } catch (const EmptyInput& e) {
    throw EmptyInput(prefix + e.what());
  } catch (const InvalidParams& e) {
    throw InvalidParams(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

std::unique_ptr<Encoder> make_encoder(std::string_view spec, int out_size) {
  if (spec.starts_with("toy:")) {
    const auto path = spec.substr(4);
    if (path.empty()) {
      throw ConfigError("toy encoder needs a world file: toy:PATH");
    }
    return std::make_unique<ToyEncoder>(
        std::make_shared<const ToyWorld>(ToyWorld::load(std::filesystem::path(path))));
  }
  if (spec.starts_with("remote:")) {
    const auto rest = spec.substr(7);
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw ConfigError("remote encoder spec must be remote:HOST:PORT");
    }
    const auto port_text = rest.substr(colon + 1);
    int port = 0;
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port < 1 || port > 65535) {
      throw ConfigError("invalid remote encoder port: " + std::string(port_text));
    }
    RemoteEncoder::Options options;
    options.host = std::string(rest.substr(0, colon));
    options.port = port;
    options.out_size = out_size;
    return std::make_unique<RemoteEncoder>(options);
  }
  throw ConfigError("unknown encoder spec: " + std::string(spec));
}

}  // namespace lgca
