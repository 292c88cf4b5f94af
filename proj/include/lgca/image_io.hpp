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

#ifndef LGCA_IMAGE_IO_HPP
#define LGCA_IMAGE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lgca/geometry.hpp"

namespace lgca {

/// Loads a PNG or JPEG as 8-bit RGB. The frame id is the file stem.
/// Throws InvalidParams when the file is missing or cannot be decoded.
ImageFrame load_image(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const ImageFrame& image);
ImageFrame decode_image(const std::vector<std::uint8_t>& bytes, std::string id);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);

}  // namespace lgca

#endif  // LGCA_IMAGE_IO_HPP
