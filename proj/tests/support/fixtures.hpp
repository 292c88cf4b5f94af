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

#ifndef LGCA_TESTS_FIXTURES_HPP
#define LGCA_TESTS_FIXTURES_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lgca/geometry.hpp"
#include "lgca/rng.hpp"
#include "lgca/toy_encoder.hpp"

namespace lgca::testing {

inline std::filesystem::path fixture_dir() { return LGCA_FIXTURE_DIR; }

// Random toy world with one image of the given size, a rows x cols grid of
// `n_features` seeded features, a caption and `n_desc` short descriptions.
struct RandomPair {
  std::shared_ptr<const ToyWorld> world;
  ImageFrame image;
  std::string caption;
  std::vector<std::string> descriptions;
};

inline RandomPair random_pair(std::uint64_t seed, int width = 64, int height = 48,
                              int n_features = 6, int n_desc = 4) {
  SplitMix64 rng(seed);
  const std::size_t dim = 8 + rng.index(9);
  std::map<std::string, std::vector<double>> lexicon;
  std::vector<std::string> features;
  for (int f = 0; f < n_features; ++f) {
    features.push_back("f" + std::to_string(f));
    lexicon[features.back()] = seeded_prototype(rng.next(), dim);
  }
  FeatureGrid grid;
  grid.rows = 2 + static_cast<int>(rng.index(7));
  grid.cols = 2 + static_cast<int>(rng.index(7));
  for (int i = 0; i < grid.rows * grid.cols; ++i) {
    grid.labels.push_back(features[rng.index(features.size())]);
  }
  RandomPair out;
  out.world = std::make_shared<ToyWorld>(dim, std::move(lexicon),
                                         std::map<std::string, FeatureGrid>{{"img", grid}});
  out.image = ImageFrame("img", width, height);
  out.caption = features[rng.index(features.size())];
  for (int d = 0; d < n_desc; ++d) {
    std::string text = features[rng.index(features.size())];
    text += " " + features[rng.index(features.size())];
    out.descriptions.push_back(text);
  }
  return out;
}

}  // namespace lgca::testing

#endif  // LGCA_TESTS_FIXTURES_HPP
