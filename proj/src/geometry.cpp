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

#include "lgca/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "lgca/error.hpp"
#include "lgca/rng.hpp"

namespace lgca {

ImageFrame::ImageFrame(std::string id, int width, int height)
    : ImageFrame(std::move(id), width, height,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                           std::max(height, 0) * 3)) {}

ImageFrame::ImageFrame(std::string id, int width, int height, std::vector<std::uint8_t> pixels)
    : id_(std::move(id)), width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ < 1 || height_ < 1) {
    throw InvalidParams("image dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(width_) * height_ * 3) {
    throw InvalidParams("pixel buffer length does not match width * height * 3");
  }
}

bool is_valid(const Region& r, const ImageFrame& image) noexcept {
  return r.side >= 1 && r.x0 >= 0 && r.y0 >= 0 && r.x1() <= image.width() &&
         r.y1() <= image.height();
}

Region full_square(const ImageFrame& image) noexcept { return {0, 0, image.min_side()}; }

void CropParams::validate() const {
  if (n_crops < 2) {
    throw InvalidParams("n_crops must be at least 2");
  }
  if (!(ratio_lo > 0.0 && ratio_lo < ratio_hi && ratio_hi <= 1.0)) {
    throw InvalidParams("crop ratios must satisfy 0 < ratio_lo < ratio_hi <= 1");
  }
}

long round_half_up(double x) noexcept { return static_cast<long>(std::floor(x + 0.5)); }

std::vector<Region> sample_crops(const ImageFrame& image, const CropParams& params) {
  params.validate();
  const int m = image.min_side();
  if (m < 2) {
    throw InvalidParams("image too small to crop");
  }
  SplitMix64 rng(params.seed);
  std::vector<Region> out;
  out.reserve(static_cast<std::size_t>(params.n_crops));
  for (int j = 0; j < params.n_crops; ++j) {
    const double ratio = params.ratio_lo + (params.ratio_hi - params.ratio_lo) * rng.uniform01();
    const int side = static_cast<int>(std::clamp<long>(round_half_up(ratio * m), 1, m));
    const int x0 = static_cast<int>(rng.index(static_cast<std::uint64_t>(image.width() - side + 1)));
    const int y0 = static_cast<int>(rng.index(static_cast<std::uint64_t>(image.height() - side + 1)));
    out.push_back({x0, y0, side});
  }
  return out;
}

Region expand_region(const Region& region, double tau, const ImageFrame& image) {
  if (!(tau > 1.0) || !std::isfinite(tau)) {
    throw InvalidParams("expansion scale must be finite and > 1");
  }
  if (!is_valid(region, image)) {
    throw InvalidParams("region outside image");
  }
  const int m = image.min_side();
  const long grown = std::max<long>(round_half_up(tau * region.side), region.side + 1L);
  const int side = static_cast<int>(std::min<long>(grown, m));
  const int delta = (side - region.side) / 2;
  return {std::clamp(region.x0 - delta, 0, image.width() - side),
          std::clamp(region.y0 - delta, 0, image.height() - side), side};
}

namespace {

// Align-corners bilinear sampling of the rectangle [x0, x0+w) x [y0, y0+h).
ImageFrame resample(const ImageFrame& image, int x0, int y0, int w, int h, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) {
    throw InvalidParams("output size must be positive");
  }
  std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h * 3);
  auto coord = [](int i, int n_out, int n_src) {
    if (n_out == 1) {
      return (n_src - 1) / 2.0;
    }
    return static_cast<double>(i) * (n_src - 1) / (n_out - 1);
  };
  for (int oy = 0; oy < out_h; ++oy) {
    const double sy = coord(oy, out_h, h);
    const int ya = static_cast<int>(std::floor(sy));
    const int yb = std::min(ya + 1, h - 1);
    const double fy = sy - ya;
    for (int ox = 0; ox < out_w; ++ox) {
      const double sx = coord(ox, out_w, w);
      const int xa = static_cast<int>(std::floor(sx));
      const int xb = std::min(xa + 1, w - 1);
      const double fx = sx - xa;
      const std::uint8_t* p00 = image.at(x0 + xa, y0 + ya);
      const std::uint8_t* p01 = image.at(x0 + xb, y0 + ya);
      const std::uint8_t* p10 = image.at(x0 + xa, y0 + yb);
      const std::uint8_t* p11 = image.at(x0 + xb, y0 + yb);
      std::uint8_t* q = out.data() + (static_cast<std::size_t>(oy) * out_w + ox) * 3;
      for (int c = 0; c < 3; ++c) {
        const double top = p00[c] + fx * (p01[c] - p00[c]);
        const double bottom = p10[c] + fx * (p11[c] - p10[c]);
        const double v = top + fy * (bottom - top);
        q[c] = static_cast<std::uint8_t>(std::clamp<long>(round_half_up(v), 0, 255));
      }
    }
  }
  return ImageFrame(image.id(), out_w, out_h, std::move(out));
}

}  // namespace

ImageFrame extract_patch(const ImageFrame& image, const Region& region, int out_size) {
  if (!is_valid(region, image)) {
    throw InvalidParams("region outside image");
  }
  return resample(image, region.x0, region.y0, region.side, region.side, out_size, out_size);
}

ImageFrame resize_frame(const ImageFrame& image, int out_size) {
  return resample(image, 0, 0, image.width(), image.height(), out_size, out_size);
}

}  // namespace lgca
