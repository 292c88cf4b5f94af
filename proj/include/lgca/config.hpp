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

#ifndef LGCA_CONFIG_HPP
#define LGCA_CONFIG_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "lgca/pipeline.hpp"

namespace lgca {

/**
 * Run configuration. Text form is a flat subset of TOML:
 *
 *   # comment
 *   n_crops = 100            ratio_lo = 0.5       ratio_hi = 0.9
 *   seed = 0                 tau = 1.25           temperature = 1.0
 *   schedule = "halving"     fixed_topk = 10      step_weights = []
 *   encoder = "toy:world.json"                    out_size = 224
 *   workers = 0              caption_template = "{label}"
 *   descriptions = "descriptions.json"
 *
 * One key per line. `[section]` headers are accepted and ignored. Unknown
 * keys are errors. Relative paths in `encoder = "toy:..."` and
 * `descriptions` resolve against the config file's directory.
 */
struct RunConfig {
  LgcaConfig lgca;
  std::string encoder;
  int out_size = 224;
  /// 0 selects the number of hardware threads.
  int workers = 0;
  std::string caption_template = "{label}";
  std::string descriptions;

  /// Throws ConfigError.
  void validate() const;
};

/// Throws ConfigError with the offending line number.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Replaces every "{label}" in `tmpl`.
std::string render_caption(std::string_view tmpl, std::string_view label);

}  // namespace lgca

#endif  // LGCA_CONFIG_HPP
