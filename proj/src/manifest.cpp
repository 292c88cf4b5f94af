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

#include "lgca/manifest.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "lgca/error.hpp"

namespace lgca {

namespace {

nlohmann::json read_json(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw ManifestError(std::string("cannot open ") + what + ": " + path.string());
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestError(std::string(what) + " is not valid JSON: " + path.string() + ": " + e.what());
  }
}

}  // namespace

DescriptionMap load_descriptions(const std::filesystem::path& path) {
  const auto doc = read_json(path, "description file");
  if (!doc.is_object()) {
    throw ManifestError("description file must map labels to string lists: " + path.string());
  }
  DescriptionMap out;
  for (const auto& [label, texts] : doc.items()) {
    if (!texts.is_array() || texts.empty()) {
      throw ManifestError("label '" + label + "' needs a non-empty list of descriptions");
    }
    auto& list = out[label];
    for (const auto& t : texts) {
      if (!t.is_string() || t.get<std::string>().empty()) {
        throw ManifestError("label '" + label + "' has a non-string or empty description");
      }
      list.push_back(t.get<std::string>());
    }
  }
  return out;
}

Manifest load_manifest(const std::filesystem::path& path) {
  const auto doc = read_json(path, "manifest");
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : (base / fp).lexically_normal();
  };
  Manifest m;
  try {
    m.descriptions_path = resolve(doc.at("descriptions").get<std::string>());
    m.descriptions = load_descriptions(m.descriptions_path);
    for (const auto& e : doc.at("entries")) {
      ManifestEntry entry;
      entry.image_path = resolve(e.at("image").get<std::string>());
      if (e.contains("label") && !e["label"].is_null()) {
        entry.true_label = e["label"].get<std::string>();
      }
      if (e.contains("candidates")) {
        entry.candidates = e["candidates"].get<std::vector<std::string>>();
      } else {
        for (const auto& [label, _] : m.descriptions) {
          entry.candidates.push_back(label);
        }
      }
      m.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError("malformed manifest " + path.string() + ": " + e.what());
  }
  for (const auto& entry : m.entries) {
    if (!std::filesystem::is_regular_file(entry.image_path)) {
      throw ManifestError("image not found: " + entry.image_path.string());
    }
    if (entry.candidates.empty()) {
      throw ManifestError("no candidate labels for " + entry.image_path.string());
    }
    for (const auto& label : entry.candidates) {
      if (!m.descriptions.contains(label)) {
        throw ManifestError("candidate label '" + label + "' has no descriptions in " +
                            m.descriptions_path.string());
      }
    }
  }
  return m;
}

}  // namespace lgca
