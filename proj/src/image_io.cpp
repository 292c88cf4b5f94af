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

#include "lgca/image_io.hpp"

#include <boost/beast/core/detail/base64.hpp>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "lgca/error.hpp"

namespace lgca {

namespace {

ImageFrame from_mat(const cv::Mat& decoded, std::string id) {
  cv::Mat rgb;
  switch (decoded.channels()) {
    case 1:
      cv::cvtColor(decoded, rgb, cv::COLOR_GRAY2RGB);
      break;
    case 4:
      cv::cvtColor(decoded, rgb, cv::COLOR_BGRA2RGB);
      break;
    default:
      cv::cvtColor(decoded, rgb, cv::COLOR_BGR2RGB);
  }
  if (rgb.depth() != CV_8U) {
    rgb.convertTo(rgb, CV_8U);
  }
  if (!rgb.isContinuous()) {
    rgb = rgb.clone();
  }
  std::vector<std::uint8_t> pixels(rgb.data, rgb.data + rgb.total() * 3);
  return ImageFrame(std::move(id), rgb.cols, rgb.rows, std::move(pixels));
}

}  // namespace

ImageFrame load_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw InvalidParams("image not found: " + path.string());
  }
  const cv::Mat decoded = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (decoded.empty()) {
    throw InvalidParams("cannot decode image: " + path.string());
  }
  return from_mat(decoded, path.stem().string());
}

ImageFrame decode_image(const std::vector<std::uint8_t>& bytes, std::string id) {
  const cv::Mat decoded = cv::imdecode(bytes, cv::IMREAD_COLOR);
  if (decoded.empty()) {
    throw InvalidParams("cannot decode image bytes");
  }
  return from_mat(decoded, std::move(id));
}

std::vector<std::uint8_t> encode_png(const ImageFrame& image) {
  // cv::Mat wants a mutable pointer; the data is only read.
  cv::Mat rgb(image.height(), image.width(), CV_8UC3,
              const_cast<std::uint8_t*>(image.pixels().data()));
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
  std::vector<std::uint8_t> out;
  if (!cv::imencode(".png", bgr, out)) {
    throw InvalidParams("PNG encoding failed");
  }
  return out;
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  namespace b64 = boost::beast::detail::base64;
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

}  // namespace lgca
