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

#ifndef LGCA_TOY_ENCODER_HPP
#define LGCA_TOY_ENCODER_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgca/embedding.hpp"

namespace lgca {

/// Coarse label map laid over an image. Cell (r, c) covers the pixels whose
/// floor(y * rows / H) == r and floor(x * cols / W) == c.
struct FeatureGrid {
  int rows = 0;
  int cols = 0;
  std::vector<std::string> labels;  // row-major

  const std::string& at(int r, int c) const { return labels[static_cast<std::size_t>(r) * cols + c]; }
};

/**
 * Deterministic fixture world: per-image feature grids plus a lexicon of
 * unit prototypes shared by feature labels and text tokens. Tokens missing
 * from the lexicon map to a pseudo-prototype seeded by FNV-1a of the token.
 *
 * JSON form: {"dim": k, "lexicon": {token: [k reals] | seed}, "grid":
 * {image_id: [[label, ...], ...]}}.
 */
class ToyWorld {
 public:
  ToyWorld(std::size_t dim, std::map<std::string, std::vector<double>> lexicon,
           std::map<std::string, FeatureGrid> grids);

  static ToyWorld from_json(const nlohmann::json& doc);
  static ToyWorld load(const std::filesystem::path& path);

  std::size_t dim() const noexcept { return dim_; }
  bool has_grid(const std::string& image_id) const { return grids_.contains(image_id); }
  const FeatureGrid& grid(const std::string& image_id) const;

  /// Lexicon prototype, or the hashed pseudo-prototype for unknown tokens.
  std::vector<double> prototype(const std::string& token) const;

 private:
  std::size_t dim_;
  std::map<std::string, std::vector<double>> lexicon_;
  std::map<std::string, FeatureGrid> grids_;
};

/// Unit vector with components 2u - 1 drawn from SplitMix64(seed).
std::vector<double> seeded_prototype(std::uint64_t seed, std::size_t dim);

/// Lower-cased whitespace tokens with surrounding punctuation removed
/// (hyphens are kept).
std::vector<std::string> tokenize(std::string_view text);

/**
 * Image patches embed to the area-weighted sum of the prototypes of the
 * labels they cover; text embeds to the sum of its token prototypes. Both
 * are normalized. Pixel values are ignored; the frame id selects the grid.
 */
class ToyEncoder final : public Encoder {
 public:
  explicit ToyEncoder(std::shared_ptr<const ToyWorld> world);

  std::size_t dim() const noexcept override { return world_->dim(); }
  std::string name() const override { return "toy"; }
  const ToyWorld& world() const noexcept { return *world_; }

  EmbeddingVector embed_image_patch(const ImageFrame& image, const Region& region) const override;
  EmbeddingVector embed_image(const ImageFrame& image) const override;
  EmbeddingVector embed_text(std::string_view text) const override;

 private:
  EmbeddingVector embed_rect(const ImageFrame& image, int x0, int y0, int w, int h) const;

  std::shared_ptr<const ToyWorld> world_;
};

}  // namespace lgca

#endif  // LGCA_TOY_ENCODER_HPP
