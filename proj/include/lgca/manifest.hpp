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

#ifndef LGCA_MANIFEST_HPP
#define LGCA_MANIFEST_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lgca {

/// Label -> description strings, as stored in a description file:
/// {"swan": ["orange beak", ...], ...}
using DescriptionMap = std::map<std::string, std::vector<std::string>>;

/// Throws ManifestError.
DescriptionMap load_descriptions(const std::filesystem::path& path);

struct ManifestEntry {
  std::filesystem::path image_path;
  std::optional<std::string> true_label;
  std::vector<std::string> candidates;
};

/**
 * Dataset listing, JSON:
 *
 *   {"descriptions": "descriptions.json",
 *    "entries": [{"image": "a.png", "label": "tern",
 *                 "candidates": ["swan", "tern"]}, ...]}
 *
 * "label" is optional; "candidates" defaults to every label in the
 * description file. Relative paths resolve against the manifest directory.
 */
struct Manifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path descriptions_path;
  DescriptionMap descriptions;
};

/// Checks that every image exists and every candidate has descriptions.
/// Throws ManifestError naming the offending path or label.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace lgca

#endif  // LGCA_MANIFEST_HPP
