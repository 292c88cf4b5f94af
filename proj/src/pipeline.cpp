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

#include "lgca/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "lgca/error.hpp"

namespace lgca {

std::string to_string(ScheduleMode mode) {
  return mode == ScheduleMode::halving ? "halving" : "fixed_initial";
}

ScheduleMode parse_schedule_mode(std::string_view text) {
  if (text == "halving") {
    return ScheduleMode::halving;
  }
  if (text == "fixed_initial") {
    return ScheduleMode::fixed_initial;
  }
  throw InvalidParams("unknown schedule mode: " + std::string(text));
}

Schedule make_schedule(int n_crops, ScheduleMode mode, int fixed_topk) {
  Schedule s;
  s.n_crops = n_crops;
  s.mode = mode;
  if (n_crops < 2) {
    throw DegenerateN("at least 2 crops are needed for an expansion step, got " +
                      std::to_string(n_crops));
  }
  int k = n_crops / 2;
  if (mode == ScheduleMode::fixed_initial) {
    if (fixed_topk < 1) {
      throw InvalidParams("fixed_topk must be at least 1");
    }
    k = fixed_topk;
  }
  for (; k >= 1; k /= 2) {
    s.topk_per_step.push_back(k);
  }
  s.steps = static_cast<int>(s.topk_per_step.size());
  return s;
}

Schedule LgcaConfig::schedule() const { return make_schedule(crop.n_crops, mode, fixed_topk); }

std::vector<double> LgcaConfig::resolved_step_weights() const {
  if (!step_weights.empty()) {
    return step_weights;
  }
  const int steps = schedule().steps;
  return std::vector<double>(static_cast<std::size_t>(steps), 1.0 / steps);
}

void LgcaConfig::validate() const {
  crop.validate();
  const Schedule s = schedule();
  if (!(tau > 1.0) || !std::isfinite(tau)) {
    throw InvalidParams("tau must be finite and > 1");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw InvalidParams("temperature must be finite and positive");
  }
  if (!step_weights.empty()) {
    if (static_cast<int>(step_weights.size()) != s.steps) {
      throw InvalidParams("step_weights has " + std::to_string(step_weights.size()) +
                          " entries but the schedule has " + std::to_string(s.steps) + " steps");
    }
    if (!std::all_of(step_weights.begin(), step_weights.end(),
                     [](double a) { return a >= 0.0 && std::isfinite(a); }) ||
        std::none_of(step_weights.begin(), step_weights.end(), [](double a) { return a > 0.0; })) {
      throw InvalidParams("step_weights must be non-negative and not all zero");
    }
  }
}

nlohmann::json to_json(const StepTrace& trace) {
  nlohmann::json selected = nlohmann::json::array();
  for (const auto& idx : trace.selected) {
    selected.push_back({idx.row, idx.col});
  }
  return {{"step", trace.step},
          {"topk", trace.topk},
          {"crops_in", trace.crops_in},
          {"crops_out", trace.crops_out},
          {"score", trace.score},
          {"entries_computed", trace.entries_computed},
          {"selected", std::move(selected)}};
}

namespace {

std::vector<EmbeddingVector> embed_regions(const ImageFrame& image, const std::vector<Region>& regions,
                                           const Encoder& encoder, OpCounters* counters) {
  std::vector<EmbedRequest> requests;
  requests.reserve(regions.size());
  for (const auto& r : regions) {
    requests.emplace_back(PatchRequest{&image, r});
  }
  if (counters != nullptr) {
    counters->encoder_calls += requests.size();
  }
  return encoder.batch_embed(requests);
}

}  // namespace

ImageContext prepare_image(const ImageFrame& image, const LgcaConfig& config,
                           const Encoder& encoder, OpCounters* counters) {
  auto regions = sample_crops(image, config.crop);
  auto embeddings = embed_regions(image, regions, encoder, counters);
  EmbeddingVector whole = encoder.embed_image(image);
  if (counters != nullptr) {
    counters->encoder_calls += 1;
  }
  auto initial = weight_crops(std::move(regions), std::move(embeddings), whole, config.temperature);
  return {&image, std::move(whole), std::move(initial)};
}

WeightedDescriptionSet prepare_descriptions(const std::string& caption,
                                            const std::vector<std::string>& texts,
                                            double temperature, const Encoder& encoder,
                                            OpCounters* counters) {
  if (texts.empty()) {
    throw EmptyInput("no descriptions for '" + caption + "'");
  }
  std::vector<EmbedRequest> requests;
  requests.reserve(texts.size() + 1);
  requests.emplace_back(TextRequest{caption});
  for (const auto& t : texts) {
    requests.emplace_back(TextRequest{t});
  }
  if (counters != nullptr) {
    counters->encoder_calls += requests.size();
  }
  auto embedded = encoder.batch_embed(requests);
  const EmbeddingVector caption_embedding = embedded.front();
  embedded.erase(embedded.begin());
  return weight_descriptions(texts, std::move(embedded), caption_embedding, temperature);
}

std::pair<WeightedCropSet, StepTrace> expansion_step(const WeightedCropSet& crops,
                                                     const WeightedDescriptionSet& descs, int topk,
                                                     double tau, const ImageContext& image,
                                                     double temperature, const Encoder& encoder,
                                                     OpCounters* counters) {
  if (crops.size() == 0) {
    throw EmptyInput("expansion step needs at least one crop");
  }
  if (topk < 1) {
    throw InvalidParams("topK must be at least 1");
  }
  const AlignmentMatrix matrix = build_matrix(crops, descs, counters);
  SelectionSet selection = select_topk(matrix, static_cast<std::size_t>(topk), counters);

  std::vector<Region> grown;
  grown.reserve(selection.rows.size());
  for (const std::size_t row : selection.rows) {
    grown.push_back(expand_region(crops.regions[row], tau, *image.image));
  }
  if (counters != nullptr) {
    counters->expansions += grown.size();
  }
  auto embeddings = embed_regions(*image.image, grown, encoder, counters);

  StepTrace trace;
  trace.topk = topk;
  trace.crops_in = crops.size();
  trace.crops_out = grown.size();
  trace.score = matrix.score();
  trace.selected = std::move(selection.indices);
  trace.entries_computed = matrix.rows() * matrix.cols();
  return {weight_crops(std::move(grown), std::move(embeddings), image.whole, temperature),
          std::move(trace)};
}

LgcaResult lgca_similarity(const ImageContext& image, const WeightedDescriptionSet& descs,
                           const LgcaConfig& config, const Encoder& encoder, OpCounters* counters) {
  config.validate();
  const Schedule schedule = config.schedule();
  const std::vector<double> alphas = config.resolved_step_weights();

  LgcaResult result;
  result.steps.reserve(static_cast<std::size_t>(schedule.steps));
  WeightedCropSet current = image.initial;
  for (int j = 0; j < schedule.steps; ++j) {
    auto [next, trace] =
        expansion_step(current, descs, schedule.topk_per_step[static_cast<std::size_t>(j)],
                       config.tau, image, config.temperature, encoder, counters);
    trace.step = j + 1;
    result.steps.push_back(std::move(trace));
    current = std::move(next);
  }
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    result.sim += alphas[j] * result.steps[j].score;
  }
  return result;
}

LgcaResult lgca_similarity(const ImageFrame& image, const std::string& caption,
                           const std::vector<std::string>& descriptions, const LgcaConfig& config,
                           const Encoder& encoder, OpCounters* counters) {
  config.validate();
  const ImageContext ctx = prepare_image(image, config, encoder, counters);
  const auto descs = prepare_descriptions(caption, descriptions, config.temperature, encoder, counters);
  return lgca_similarity(ctx, descs, config, encoder, counters);
}

double baseline_q_similarity(const ImageContext& image, const WeightedDescriptionSet& descs,
                             OpCounters* counters) {
  return build_matrix(image.initial, descs, counters).score();
}

double baseline_q_similarity(const ImageFrame& image, const std::string& caption,
                             const std::vector<std::string>& descriptions,
                             const LgcaConfig& config, const Encoder& encoder,
                             OpCounters* counters) {
  config.validate();
  const ImageContext ctx = prepare_image(image, config, encoder, counters);
  const auto descs = prepare_descriptions(caption, descriptions, config.temperature, encoder, counters);
  return baseline_q_similarity(ctx, descs, counters);
}

std::string argmax_label(std::span<const std::pair<std::string, double>> values) {
  if (values.empty()) {
    throw EmptyInput("argmax over no labels");
  }
  const auto* best = &values.front();
  for (const auto& v : values) {
    if (v.second > best->second || (v.second == best->second && v.first < best->first)) {
      best = &v;
    }
  }
  return best->first;
}

SimilarityReport classify(const ImageContext& image, std::span<const Candidate> candidates,
                          const LgcaConfig& config, const Encoder& encoder, OpCounters* counters) {
  if (candidates.empty()) {
    throw EmptyInput("classify needs at least one candidate label");
  }
  SimilarityReport report;
  report.image_id = image.image->id();
  std::vector<std::pair<std::string, double>> sims;
  std::vector<std::pair<std::string, double>> q_scores;
  for (const auto& c : candidates) {
    LgcaResult r = lgca_similarity(image, c.descriptions, config, encoder, counters);
    sims.emplace_back(c.label, r.sim);
    q_scores.emplace_back(c.label, r.first_score());
    report.scores.push_back({c.label, r.sim, r.first_score(), std::move(r.steps)});
  }
  report.predicted = argmax_label(sims);
  report.predicted_by_q = argmax_label(q_scores);
  return report;
}

SimilarityReport classify(const ImageFrame& image, std::span<const Candidate> candidates,
                          const LgcaConfig& config, const Encoder& encoder, OpCounters* counters) {
  config.validate();
  const ImageContext ctx = prepare_image(image, config, encoder, counters);
  return classify(ctx, candidates, config, encoder, counters);
}

}  // namespace lgca
