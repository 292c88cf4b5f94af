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

#ifndef LGCA_PIPELINE_HPP
#define LGCA_PIPELINE_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgca/alignment.hpp"
#include "lgca/counters.hpp"
#include "lgca/embedding.hpp"
#include "lgca/geometry.hpp"

namespace lgca {

enum class ScheduleMode { halving, fixed_initial };

std::string to_string(ScheduleMode mode);
/// Accepts "halving" or "fixed_initial". Throws InvalidParams.
ScheduleMode parse_schedule_mode(std::string_view text);

/// Per-step top-K values. In halving mode step j keeps floor(N / 2^j) and
/// the step count T is the largest integer with floor(N / 2^T) == 1.
struct Schedule {
  int n_crops = 0;
  int steps = 0;
  std::vector<int> topk_per_step;
  ScheduleMode mode = ScheduleMode::halving;
};

/**
 * halving: [N/2, N/4, ..., 1]; throws DegenerateN for N < 2.
 * fixed_initial: [K, K/2, ..., 1] with K = fixed_topk; throws InvalidParams
 * for K < 1.
 */
Schedule make_schedule(int n_crops, ScheduleMode mode, int fixed_topk = 10);

struct LgcaConfig {
  CropParams crop;
  double tau = 1.25;
  /// One weight per step. Empty means uniform 1/T.
  std::vector<double> step_weights;
  double temperature = 1.0;
  ScheduleMode mode = ScheduleMode::halving;
  int fixed_topk = 10;

  Schedule schedule() const;
  /// step_weights, or uniform weights when none were given.
  std::vector<double> resolved_step_weights() const;
  /// Throws InvalidParams (or DegenerateN) on any broken invariant.
  void validate() const;
};

struct StepTrace {
  int step = 0;
  int topk = 0;
  std::size_t crops_in = 0;
  std::size_t crops_out = 0;
  double score = 0.0;
  std::vector<MatrixIndex> selected;
  std::uint64_t entries_computed = 0;
};

nlohmann::json to_json(const StepTrace& trace);

/// Everything about one image that is shared across candidate labels.
struct ImageContext {
  const ImageFrame* image = nullptr;
  EmbeddingVector whole;
  WeightedCropSet initial;
};

/// Samples and embeds the initial crops and weights them against the
/// whole image.
ImageContext prepare_image(const ImageFrame& image, const LgcaConfig& config,
                           const Encoder& encoder, OpCounters* counters = nullptr);

/// Embeds `caption` and `texts` and weights the descriptions against the
/// caption. Throws EmptyInput when `texts` is empty.
WeightedDescriptionSet prepare_descriptions(const std::string& caption,
                                            const std::vector<std::string>& texts,
                                            double temperature, const Encoder& encoder,
                                            OpCounters* counters = nullptr);

/**
 * One expansion step: score the alignment matrix, keep the rows of its
 * top-K entries, grow each kept region by `tau` inside the frame, re-embed,
 * and re-weight the grown set against the whole image.
 */
std::pair<WeightedCropSet, StepTrace> expansion_step(const WeightedCropSet& crops,
                                                     const WeightedDescriptionSet& descs, int topk,
                                                     double tau, const ImageContext& image,
                                                     double temperature, const Encoder& encoder,
                                                     OpCounters* counters = nullptr);

struct LgcaResult {
  double sim = 0.0;
  std::vector<StepTrace> steps;

  /// Score of the first, unexpanded matrix.
  double first_score() const { return steps.front().score; }
};

/// Runs every scheduled step from the image's initial crops and returns
/// sum_j alpha_j * score_j.
LgcaResult lgca_similarity(const ImageContext& image, const WeightedDescriptionSet& descs,
                           const LgcaConfig& config, const Encoder& encoder,
                           OpCounters* counters = nullptr);

/// Convenience overload that prepares the image and descriptions itself.
LgcaResult lgca_similarity(const ImageFrame& image, const std::string& caption,
                           const std::vector<std::string>& descriptions, const LgcaConfig& config,
                           const Encoder& encoder, OpCounters* counters = nullptr);

/// Non-expanding baseline: score of the initial alignment matrix.
double baseline_q_similarity(const ImageContext& image, const WeightedDescriptionSet& descs,
                             OpCounters* counters = nullptr);

double baseline_q_similarity(const ImageFrame& image, const std::string& caption,
                             const std::vector<std::string>& descriptions,
                             const LgcaConfig& config, const Encoder& encoder,
                             OpCounters* counters = nullptr);

struct Candidate {
  std::string label;
  WeightedDescriptionSet descriptions;
};

struct LabelScore {
  std::string label;
  double sim = 0.0;
  double q_score = 0.0;
  std::vector<StepTrace> steps;
};

struct SimilarityReport {
  std::string image_id;
  std::vector<LabelScore> scores;  // candidate order
  std::string predicted;
  std::string predicted_by_q;
};

/// Label with the largest value; ties go to the lexicographically smallest
/// label.
std::string argmax_label(std::span<const std::pair<std::string, double>> values);

/// Scores every candidate on one shared crop set and picks the argmax.
/// Throws EmptyInput when there are no candidates.
SimilarityReport classify(const ImageContext& image, std::span<const Candidate> candidates,
                          const LgcaConfig& config, const Encoder& encoder,
                          OpCounters* counters = nullptr);

SimilarityReport classify(const ImageFrame& image, std::span<const Candidate> candidates,
                          const LgcaConfig& config, const Encoder& encoder,
                          OpCounters* counters = nullptr);

}  // namespace lgca

#endif  // LGCA_PIPELINE_HPP
