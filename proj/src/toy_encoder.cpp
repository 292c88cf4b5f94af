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

#include "lgca/toy_encoder.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "lgca/error.hpp"
#include "lgca/rng.hpp"

namespace lgca {

std::vector<double> seeded_prototype(std::uint64_t seed, std::size_t dim) {
  SplitMix64 rng(seed);
  std::vector<double> v(dim);
  for (double& x : v) {
    x = 2.0 * rng.uniform01() - 1.0;
  }
  const auto unit = EmbeddingVector::normalized(std::move(v));
  return {unit.values().begin(), unit.values().end()};
}

std::vector<std::string> tokenize(std::string_view text) {
  auto is_punct = [](unsigned char c) { return c < 128 && std::ispunct(c) && c != '-'; };
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_punct(static_cast<unsigned char>(text[b]))) {
      ++b;
    }
    while (e > b && is_punct(static_cast<unsigned char>(text[e - 1]))) {
      --e;
    }
    if (b < e) {
      std::string tok(text.substr(b, e - b));
      std::transform(tok.begin(), tok.end(), tok.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      tokens.push_back(std::move(tok));
    }
    i = j;
  }
  return tokens;
}

ToyWorld::ToyWorld(std::size_t dim, std::map<std::string, std::vector<double>> lexicon,
                   std::map<std::string, FeatureGrid> grids)
    : dim_(dim), lexicon_(std::move(lexicon)), grids_(std::move(grids)) {
  if (dim_ < 2) {
    throw InvalidParams("toy world dim must be at least 2");
  }
  for (auto& [token, proto] : lexicon_) {
    if (proto.size() != dim_) {
      throw DimMismatch("lexicon entry '" + token + "' has wrong dimension");
    }
    const auto unit = EmbeddingVector::normalized(proto);
    proto.assign(unit.values().begin(), unit.values().end());
  }
  for (auto a = lexicon_.begin(); a != lexicon_.end(); ++a) {
    for (auto b = std::next(a); b != lexicon_.end(); ++b) {
      if (a->second == b->second) {
        throw InvalidParams("lexicon prototypes '" + a->first + "' and '" + b->first +
                            "' are identical");
      }
    }
  }
  for (const auto& [id, g] : grids_) {
    if (g.rows < 1 || g.cols < 1 || g.labels.size() != static_cast<std::size_t>(g.rows) * g.cols) {
      throw InvalidParams("malformed feature grid for image '" + id + "'");
    }
  }
}

ToyWorld ToyWorld::from_json(const nlohmann::json& doc) {
  try {
    const auto dim = doc.at("dim").get<std::size_t>();
    std::map<std::string, std::vector<double>> lexicon;
    for (const auto& [token, value] : doc.at("lexicon").items()) {
      if (value.is_array()) {
        lexicon.emplace(token, value.get<std::vector<double>>());
      } else {
        lexicon.emplace(token, seeded_prototype(value.get<std::uint64_t>(), dim));
      }
    }
    std::map<std::string, FeatureGrid> grids;
    for (const auto& [id, rows] : doc.at("grid").items()) {
      FeatureGrid g;
      g.rows = static_cast<int>(rows.size());
      g.cols = g.rows > 0 ? static_cast<int>(rows.front().size()) : 0;
      for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != g.cols) {
          throw InvalidParams("ragged feature grid for image '" + id + "'");
        }
        for (const auto& label : row) {
          g.labels.push_back(label.get<std::string>());
        }
      }
      grids.emplace(id, std::move(g));
    }
    return ToyWorld(dim, std::move(lexicon), std::move(grids));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams(std::string("malformed toy world: ") + e.what());
  }
}

ToyWorld ToyWorld::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open toy world: " + path.string());
  }
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("toy world is not valid JSON: " + path.string() + ": " + e.what());
  }
}

const FeatureGrid& ToyWorld::grid(const std::string& image_id) const {
  const auto it = grids_.find(image_id);
  if (it == grids_.end()) {
    throw InvalidParams("toy world has no grid for image '" + image_id + "'");
  }
  return it->second;
}

std::vector<double> ToyWorld::prototype(const std::string& token) const {
  if (const auto it = lexicon_.find(token); it != lexicon_.end()) {
    return it->second;
  }
  return seeded_prototype(fnv1a64(token), dim_);
}

ToyEncoder::ToyEncoder(std::shared_ptr<const ToyWorld> world) : world_(std::move(world)) {
  if (!world_) {
    throw InvalidParams("toy encoder needs a world");
  }
}

EmbeddingVector ToyEncoder::embed_rect(const ImageFrame& image, int x0, int y0, int w, int h) const {
  const FeatureGrid& g = world_->grid(image.id());
  const long H = image.height();
  const long W = image.width();
  // Pixel span of cell k along an axis of n pixels split into `cells` cells.
  auto span_of = [](long k, long n, long cells) {
    return std::pair{(k * n + cells - 1) / cells, ((k + 1) * n + cells - 1) / cells};
  };
  auto overlap = [](std::pair<long, long> s, long lo, long hi) {
    return std::max(0L, std::min(s.second, hi) - std::max(s.first, lo));
  };
  std::map<std::string, long> area;
  for (int r = 0; r < g.rows; ++r) {
    const long dy = overlap(span_of(r, H, g.rows), y0, y0 + h);
    if (dy == 0) {
      continue;
    }
    for (int c = 0; c < g.cols; ++c) {
      const long dx = overlap(span_of(c, W, g.cols), x0, x0 + w);
      if (dx > 0) {
        area[g.at(r, c)] += dx * dy;
      }
    }
  }
  std::vector<double> acc(world_->dim(), 0.0);
  for (const auto& [label, count] : area) {
    const auto proto = world_->prototype(label);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] += static_cast<double>(count) * proto[i];
    }
  }
  return EmbeddingVector::normalized(std::move(acc));
}

EmbeddingVector ToyEncoder::embed_image_patch(const ImageFrame& image, const Region& region) const {
  if (!is_valid(region, image)) {
    throw InvalidParams("region outside image");
  }
  return embed_rect(image, region.x0, region.y0, region.side, region.side);
}

EmbeddingVector ToyEncoder::embed_image(const ImageFrame& image) const {
  return embed_rect(image, 0, 0, image.width(), image.height());
}

EmbeddingVector ToyEncoder::embed_text(std::string_view text) const {
  const auto tokens = tokenize(text);
  if (tokens.empty()) {
    throw EmptyInput("cannot embed empty text");
  }
  std::vector<double> acc(world_->dim(), 0.0);
  for (const auto& tok : tokens) {
    const auto proto = world_->prototype(tok);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] += proto[i];
    }
  }
  return EmbeddingVector::normalized(std::move(acc));
}

}  // namespace lgca
