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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lgca/commands.hpp"
#include "lgca/error.hpp"

namespace {

lgca::RunConfig read_config(const std::string& path) {
  return path.empty() ? lgca::RunConfig{} : lgca::load_config(path);
}

std::optional<std::string> non_empty(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-shot image classification by localized-globalized cross-alignment"};
  app.require_subcommand(1);

  std::string config_path;
  std::string encoder;
  std::optional<std::uint64_t> seed;

  auto* classify = app.add_subcommand("classify", "Classify every image in a manifest");
  std::string manifest;
  std::string out_dir;
  classify->add_option("--manifest", manifest, "Manifest JSON")->required();
  classify->add_option("--config", config_path, "Config file");
  classify->add_option("--encoder", encoder, "toy:WORLD.json or remote:HOST:PORT");
  classify->add_option("--seed", seed, "Crop sampling seed (overrides config)");
  classify->add_option("--out", out_dir, "Output directory")->required();

  auto* bench = app.add_subcommand("bench", "Count LGCA work against the non-expanding baseline");
  lgca::cli::BenchOptions bench_opts;
  std::string mode = "lgca";
  bench->add_option("--n-grid", bench_opts.n_grid, "Crop counts")->delimiter(',');
  bench->add_option("--m-grid", bench_opts.m_grid, "Description counts")->delimiter(',');
  bench->add_option("--trials", bench_opts.trials, "Reruns per grid point")->check(CLI::PositiveNumber);
  bench->add_option("--mode", mode, "lgca or q")->check(CLI::IsMember({"lgca", "q"}));
  bench->add_option("--config", config_path, "Config file");
  bench->add_option("--out", bench_opts.out_dir, "Output directory");

  auto* trace = app.add_subcommand("trace", "Print the expansion steps for one image and label");
  lgca::cli::TraceOptions trace_opts;
  std::string image;
  std::string descriptions;
  trace->add_option("--image", image, "Image file")->required();
  trace->add_option("--label", trace_opts.label, "Candidate label")->required();
  trace->add_option("--config", config_path, "Config file");
  trace->add_option("--encoder", encoder, "toy:WORLD.json or remote:HOST:PORT");
  trace->add_option("--descriptions", descriptions, "Description JSON");
  trace->add_option("--seed", seed, "Crop sampling seed (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : lgca::cli::kConfigError;
  }

  lgca::RunConfig config;
  try {
    config = read_config(config_path);
  } catch (const lgca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lgca::cli::kConfigError;
  }
  if (seed) {
    config.lgca.crop.seed = *seed;
  }

  if (*classify) {
    return lgca::cli::cmd_classify({manifest, config, non_empty(encoder), out_dir}, std::cerr);
  }
  if (*bench) {
    bench_opts.q_only = mode == "q";
    bench_opts.config = config;
    return lgca::cli::cmd_bench(bench_opts, std::cout, std::cerr);
  }
  trace_opts.image = image;
  trace_opts.config = config;
  trace_opts.encoder = non_empty(encoder);
  if (!descriptions.empty()) {
    trace_opts.descriptions = descriptions;
  }
  return lgca::cli::cmd_trace(trace_opts, std::cout, std::cerr);
}
