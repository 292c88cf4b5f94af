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

#include "lgca/commands.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "lgca/bench.hpp"
#include "lgca/error.hpp"
#include "lgca/image_io.hpp"
#include "lgca/manifest.hpp"

namespace lgca::cli {

namespace {

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

// Maps library errors onto exit codes; everything else is a plain failure.
int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DegenerateN*>(&e)) {
    return kConfigError;
  }
  if (dynamic_cast<const EncoderUnavailable*>(&e) || dynamic_cast<const DimMismatch*>(&e)) {
    return kEncoderUnavailable;
  }
  if (dynamic_cast<const ManifestError*>(&e)) {
    return kManifestError;
  }
  if (dynamic_cast<const BoundViolated*>(&e)) {
    return kBoundViolated;
  }
  return kFailure;
}

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << content;
}

std::unique_ptr<Encoder> open_encoder(const std::optional<std::string>& cli_value,
                                      const RunConfig& config) {
  return make_encoder(resolve_encoder_spec(cli_value, config.encoder), config.out_size);
}

std::vector<Candidate> prepare_candidates(const std::vector<std::string>& labels,
                                          const DescriptionMap& descriptions,
                                          const RunConfig& config, const Encoder& encoder) {
  std::vector<Candidate> out;
  out.reserve(labels.size());
  for (const auto& label : labels) {
    out.push_back({label, prepare_descriptions(render_caption(config.caption_template, label),
                                               descriptions.at(label),
                                               config.lgca.temperature, encoder)});
  }
  return out;
}

}  // namespace

std::string resolve_encoder_spec(const std::optional<std::string>& cli_value,
                                 const std::string& config_value) {
  if (const char* env = std::getenv("LGCA_ENCODER"); env != nullptr && *env != '\0') {
    return env;
  }
  if (cli_value && !cli_value->empty()) {
    return *cli_value;
  }
  if (!config_value.empty()) {
    return config_value;
  }
  throw ConfigError("no encoder given: use --encoder, LGCA_ENCODER or the config 'encoder' key");
}

int cmd_classify(const ClassifyOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    options.config.validate();
    const Manifest manifest = load_manifest(options.manifest);
    const auto encoder = open_encoder(options.encoder, options.config);
    std::filesystem::create_directories(options.out_dir);

    std::map<std::string, Candidate> by_label;
    for (const auto& entry : manifest.entries) {
      for (const auto& label : entry.candidates) {
        if (!by_label.contains(label)) {
          by_label.emplace(label, prepare_candidates({label}, manifest.descriptions,
                                                     options.config, *encoder)
                                      .front());
        }
      }
    }

    const std::size_t n = manifest.entries.size();
    std::vector<std::optional<SimilarityReport>> reports(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    auto work = [&] {
      for (std::size_t i = next++; i < n && !stop; i = next++) {
        try {
          const auto& entry = manifest.entries[i];
          ImageFrame image;
          try {
            image = load_image(entry.image_path);
          } catch (const InvalidParams& e) {
            throw ManifestError(e.what());
          }
          std::vector<Candidate> candidates;
          for (const auto& label : entry.candidates) {
            candidates.push_back(by_label.at(label));
          }
          reports[i] = classify(image, candidates, options.config.lgca, *encoder);
        } catch (...) {
          errors[i] = std::current_exception();
          stop = true;
        }
      }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(n, options.config.workers > 0 ? options.config.workers : hw);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(work);
      }
      work();
    }

    std::string csv = "image_id,true_label,predicted_label,sims\n";
    std::string traces;
    std::size_t processed = 0;
    std::size_t labeled = 0;
    std::size_t correct = 0;
    std::size_t correct_q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reports[i]) {
        continue;
      }
      const auto& r = *reports[i];
      const auto& truth = manifest.entries[i].true_label;
      ++processed;
      std::string sims;
      for (const auto& s : r.scores) {
        sims += (sims.empty() ? "" : ";") + s.label + "=" + fmt9(s.sim);
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& t : s.steps) {
          steps.push_back(to_json(t));
        }
        traces += nlohmann::json{{"image_id", r.image_id},
                                 {"label", s.label},
                                 {"sim", s.sim},
                                 {"q_score", s.q_score},
                                 {"steps", std::move(steps)}}
                      .dump() +
                  "\n";
      }
      csv += r.image_id + "," + truth.value_or("") + "," + r.predicted + "," + sims + "\n";
      if (truth) {
        ++labeled;
        correct += r.predicted == *truth;
        correct_q += r.predicted_by_q == *truth;
      }
    }
    write_file(options.out_dir / "predictions.csv", csv);
    write_file(options.out_dir / "traces.jsonl", traces);

    nlohmann::json summary{{"status", "ok"},
                           {"images", n},
                           {"processed", processed},
                           {"labeled", labeled},
                           {"correct", correct},
                           {"accuracy", nullptr},
                           {"accuracy_q", nullptr},
                           {"encoder", encoder->name()}};
    if (labeled > 0) {
      summary["accuracy"] = static_cast<double>(correct) / static_cast<double>(labeled);
      summary["accuracy_q"] = static_cast<double>(correct_q) / static_cast<double>(labeled);
    }
    int code = kOk;
    for (std::size_t i = 0; i < n; ++i) {
      if (!errors[i]) {
        continue;
      }
      summary["status"] = "failed";
      summary["failed_entry"] = i;
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        summary["error"] = e.what();
        log << "error: " << manifest.entries[i].image_path.string() << ": " << e.what() << '\n';
        code = exit_code_for(e);
      }
      break;
    }
    write_file(options.out_dir / "summary.json", summary.dump(2) + "\n");
    return code;
  });
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    for (const int n : options.n_grid) {
      if (n < 2) {
        throw ConfigError("bench grid N must be at least 2, got " + std::to_string(n));
      }
    }
    LgcaConfig base = options.config.lgca;
    base.step_weights.clear();
    const auto report =
        bench::verify_bound(options.n_grid, options.m_grid, options.trials, base, options.q_only);
    if (!options.out_dir.empty()) {
      std::filesystem::create_directories(options.out_dir);
      write_file(options.out_dir / "complexity.json", report.to_json().dump(2) + "\n");
      write_file(options.out_dir / "complexity.csv", report.to_csv());
    }
    out << report.to_csv();
    out << "fitted sort constant c = " << fmt9(report.fitted_constant) << " (limit "
        << fmt9(bench::kMaxSortConstant) << ")\n";
    return static_cast<int>(kOk);
  });
}

int cmd_trace(const TraceOptions& options, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    options.config.validate();
    const auto desc_path = options.descriptions
                               ? *options.descriptions
                               : std::filesystem::path(options.config.descriptions);
    if (desc_path.empty()) {
      throw ConfigError("trace needs --descriptions or the config 'descriptions' key");
    }
    const DescriptionMap descriptions = load_descriptions(desc_path);
    if (!descriptions.contains(options.label)) {
      throw ManifestError("label '" + options.label + "' has no descriptions");
    }
    ImageFrame image;
    try {
      image = load_image(options.image);
    } catch (const InvalidParams& e) {
      throw ManifestError(e.what());
    }
    const auto encoder = open_encoder(options.encoder, options.config);
    const auto candidate =
        prepare_candidates({options.label}, descriptions, options.config, *encoder).front();
    const ImageContext ctx = prepare_image(image, options.config.lgca, *encoder);
    const LgcaResult r = lgca_similarity(ctx, candidate.descriptions, options.config.lgca, *encoder);

    out << "image " << image.id() << "  label " << options.label << '\n';
    out << "step\ttopk\tcrops_in\tcrops_out\tscore\n";
    for (const auto& s : r.steps) {
      out << s.step << '\t' << s.topk << '\t' << s.crops_in << '\t' << s.crops_out << '\t'
          << fmt9(s.score) << '\n';
    }
    out << "sim\t" << fmt9(r.sim) << '\n';
    return static_cast<int>(kOk);
  });
}

}  // namespace lgca::cli
