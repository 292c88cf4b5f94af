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

#ifndef LGCA_COMMANDS_HPP
#define LGCA_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lgca/config.hpp"

// Entry points behind the `lgca` command line tool.
namespace lgca::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kEncoderUnavailable = 3,
  kManifestError = 4,
  kBoundViolated = 5,
};

/// LGCA_ENCODER, else the command-line value, else the config value.
/// Throws ConfigError when none is set.
std::string resolve_encoder_spec(const std::optional<std::string>& cli_value,
                                 const std::string& config_value);

struct ClassifyOptions {
  std::filesystem::path manifest;
  RunConfig config;
  std::optional<std::string> encoder;
  std::filesystem::path out_dir;
};

/// Writes predictions.csv, traces.jsonl and summary.json into out_dir.
int cmd_classify(const ClassifyOptions& options, std::ostream& log);

struct BenchOptions {
  std::vector<int> n_grid{16, 32, 64, 128, 256, 512, 1024};
  std::vector<int> m_grid{8, 32, 128};
  int trials = 1;
  bool q_only = false;
  RunConfig config;
  std::filesystem::path out_dir;
};

/// Writes complexity.json and complexity.csv into out_dir.
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& log);

struct TraceOptions {
  std::filesystem::path image;
  std::string label;
  RunConfig config;
  std::optional<std::string> encoder;
  /// Falls back to config.descriptions.
  std::optional<std::filesystem::path> descriptions;
};

/// Prints one row per expansion step and the final similarity.
int cmd_trace(const TraceOptions& options, std::ostream& out, std::ostream& log);

}  // namespace lgca::cli

#endif  // LGCA_COMMANDS_HPP
