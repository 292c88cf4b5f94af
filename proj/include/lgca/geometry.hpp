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

#ifndef LGCA_GEOMETRY_HPP
#define LGCA_GEOMETRY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lgca {

/// 8-bit RGB image, row-major, three bytes per pixel.
class ImageFrame {
 public:
  ImageFrame() = default;
  /// Black image of the given size.
  ImageFrame(std::string id, int width, int height);
  ImageFrame(std::string id, int width, int height, std::vector<std::uint8_t> pixels);

  const std::string& id() const noexcept { return id_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int min_side() const noexcept { return width_ < height_ ? width_ : height_; }
  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

  const std::uint8_t* at(int x, int y) const noexcept {
    return pixels_.data() + (static_cast<std::size_t>(y) * width_ + x) * 3;
  }
  std::uint8_t* at(int x, int y) noexcept {
    return pixels_.data() + (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

 private:
  std::string id_;
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Axis-aligned square window of a source image.
struct Region {
  int x0 = 0;
  int y0 = 0;
  int side = 1;

  int x1() const noexcept { return x0 + side; }
  int y1() const noexcept { return y0 + side; }

  bool contains(const Region& other) const noexcept {
    return x0 <= other.x0 && y0 <= other.y0 && x1() >= other.x1() && y1() >= other.y1();
  }
  bool operator==(const Region&) const = default;
};

bool is_valid(const Region& region, const ImageFrame& image) noexcept;

/// The largest square anchored at the origin.
Region full_square(const ImageFrame& image) noexcept;

struct CropParams {
  int n_crops = 100;
  double ratio_lo = 0.5;
  double ratio_hi = 0.9;
  std::uint64_t seed = 0;

  /// Throws InvalidParams.
  void validate() const;
};

/// Round-half-up to the nearest integer.
long round_half_up(double x) noexcept;

/**
 * Samples `params.n_crops` square regions. For each crop, in this order:
 * a side ratio uniform in [ratio_lo, ratio_hi), then x0 and y0 uniform over
 * every valid placement. Side = round_half_up(ratio * min(W, H)) clamped to
 * [1, min(W, H)]. Fully determined by `params.seed`.
 */
std::vector<Region> sample_crops(const ImageFrame& image, const CropParams& params);

/**
 * Center-anchored expansion by `tau`, clamped to the frame. The new side is
 * round_half_up(tau * side), raised to at least side + 1 and capped at
 * min(W, H). The result always contains `region`.
 */
Region expand_region(const Region& region, double tau, const ImageFrame& image);

/// Bilinear resample of `region` to an out_size x out_size image. Corner
/// samples land exactly on corner pixels.
ImageFrame extract_patch(const ImageFrame& image, const Region& region, int out_size = 224);

/// Bilinear resample of the whole frame to out_size x out_size.
ImageFrame resize_frame(const ImageFrame& image, int out_size = 224);

}  // namespace lgca

#endif  // LGCA_GEOMETRY_HPP
