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

#include "lgca/remote_encoder.hpp"

#include "lgca/error.hpp"
#include "lgca/image_io.hpp"

namespace lgca {

RemoteEncoder::RemoteEncoder(Options options) : options_(std::move(options)) {
  socket_ = wire::Socket::connect(options_.host, options_.port, options_.timeout_ms);
  socket_.send_frame({{"op", "hello"}});
  const auto reply = socket_.recv_frame();
  if (!reply.is_object() || !reply.contains("dim") || !reply["dim"].is_number_unsigned()) {
    throw EncoderUnavailable("encoder handshake did not report a dimension");
  }
  dim_ = reply["dim"].get<std::size_t>();
  if (dim_ < 2) {
    throw DimMismatch("encoder reported dimension " + std::to_string(dim_));
  }
  model_ = reply.value("model", std::string("unknown"));
}

nlohmann::json RemoteEncoder::make_request(const EmbedRequest& request, std::uint64_t id) const {
  if (const auto* text = std::get_if<TextRequest>(&request)) {
    if (text->text.empty()) {
      throw EmptyInput("cannot embed empty text");
    }
    return {{"id", id}, {"op", "embed_text"}, {"text", text->text}};
  }
  const auto& patch = std::get<PatchRequest>(request);
  if (patch.image == nullptr) {
    throw InvalidParams("patch request without an image");
  }
  const ImageFrame resized = patch.region
                                 ? extract_patch(*patch.image, *patch.region, options_.out_size)
                                 : resize_frame(*patch.image, options_.out_size);
  return {{"id", id},
          {"op", "embed_image"},
          {"png_b64", base64_encode(encode_png(resized))},
          {"out_size", options_.out_size}};
}

EmbeddingVector RemoteEncoder::parse_response(const nlohmann::json& response,
                                              std::uint64_t id) const {
  if (!response.is_object() || !response.contains("id") || response["id"] != id) {
    throw EncoderUnavailable("response id does not match request " + std::to_string(id));
  }
  if (response.contains("error")) {
    throw EncoderUnavailable("encoder error for request " + std::to_string(id) + ": " +
                             response["error"].dump());
  }
  if (!response.contains("embedding") || !response["embedding"].is_array()) {
    throw EncoderUnavailable("response " + std::to_string(id) + " has no embedding");
  }
  auto values = response["embedding"].get<std::vector<double>>();
  if (values.size() != dim_) {
    throw DimMismatch("expected " + std::to_string(dim_) + " components, got " +
                      std::to_string(values.size()));
  }
  return EmbeddingVector::normalized(std::move(values));
}

EmbeddingVector RemoteEncoder::round_trip(const EmbedRequest& request) const {
  std::lock_guard lock(mutex_);
  const std::uint64_t id = next_id_++;
  socket_.send_frame(make_request(request, id));
  return parse_response(socket_.recv_frame(), id);
}

EmbeddingVector RemoteEncoder::embed_image_patch(const ImageFrame& image,
                                                 const Region& region) const {
  return round_trip(PatchRequest{&image, region});
}

EmbeddingVector RemoteEncoder::embed_image(const ImageFrame& image) const {
  return round_trip(PatchRequest{&image, std::nullopt});
}

EmbeddingVector RemoteEncoder::embed_text(std::string_view text) const {
  return round_trip(TextRequest{std::string(text)});
}

std::vector<EmbeddingVector> RemoteEncoder::batch_embed(
    std::span<const EmbedRequest> requests) const {
  std::vector<nlohmann::json> frames;
  frames.reserve(requests.size());
  std::lock_guard lock(mutex_);
  const std::uint64_t first_id = next_id_;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    try {
      frames.push_back(make_request(requests[i], first_id + i));
    } catch (const Error&) {
      rethrow_with_index(i);
    }
  }
  next_id_ += requests.size();
  // At most kWindow frames in flight. Every reply is read, even after a
  // failure, so the stream stays aligned.
  constexpr std::size_t kWindow = 8;
  std::vector<nlohmann::json> responses;
  responses.reserve(requests.size());
  std::size_t sent = 0;
  while (responses.size() < requests.size()) {
    while (sent < frames.size() && sent - responses.size() < kWindow) {
      socket_.send_frame(frames[sent++]);
    }
    responses.push_back(socket_.recv_frame());
  }
  std::vector<EmbeddingVector> out;
  out.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    try {
      out.push_back(parse_response(responses[i], first_id + i));
    } catch (const Error&) {
      rethrow_with_index(i);
    }
  }
  return out;
}

}  // namespace lgca
