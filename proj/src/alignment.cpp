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

#include "lgca/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lgca/error.hpp"

namespace lgca {

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0;
  double carry = 0.0;
  for (const double x : values) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

std::vector<double> softmax_weights(std::span<const double> similarities, double temperature) {
  if (similarities.empty()) {
    throw EmptyInput("softmax of an empty list");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw InvalidParams("softmax temperature must be finite and positive");
  }
  if (!std::all_of(similarities.begin(), similarities.end(), [](double x) { return std::isfinite(x); })) {
    throw InvalidParams("softmax input must be finite");
  }
  const double peak = *std::max_element(similarities.begin(), similarities.end());
  std::vector<double> out(similarities.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp((similarities[i] - peak) / temperature);
  }
  const double total = compensated_sum(out);
  // Floor at the smallest normal double so extreme logits stay positive.
  for (double& w : out) {
    w = std::max(w / total, std::numeric_limits<double>::min());
  }
  return out;
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.dim() != v.dim()) {
    throw DimMismatch("cosine of vectors with dims " + std::to_string(u.dim()) + " and " +
                      std::to_string(v.dim()));
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  return std::clamp(dot / std::sqrt(uu * vv), -1.0, 1.0);
}

namespace {

void check_distribution(std::span<const double> weights, const char* what) {
  if (!std::all_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; })) {
    throw InvalidParams(std::string(what) + " weights must be positive");
  }
  if (std::fabs(compensated_sum(weights) - 1.0) > 1e-9) {
    throw InvalidParams(std::string(what) + " weights must sum to 1");
  }
}

std::vector<double> cosines_to(const std::vector<EmbeddingVector>& items,
                               const EmbeddingVector& anchor) {
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& e : items) {
    out.push_back(cosine(e, anchor));
  }
  return out;
}

}  // namespace

void WeightedCropSet::validate() const {
  if (regions.size() != embeddings.size() || regions.size() != weights.size()) {
    throw InvalidParams("crop set fields have different lengths");
  }
  check_distribution(weights, "crop");
}

void WeightedDescriptionSet::validate() const {
  if (texts.size() != embeddings.size() || texts.size() != weights.size()) {
    throw InvalidParams("description set fields have different lengths");
  }
  check_distribution(weights, "description");
}

WeightedCropSet weight_crops(std::vector<Region> regions, std::vector<EmbeddingVector> embeddings,
                             const EmbeddingVector& whole_image, double temperature) {
  if (regions.size() != embeddings.size()) {
    throw InvalidParams("one embedding per region required");
  }
  auto weights = softmax_weights(cosines_to(embeddings, whole_image), temperature);
  return {std::move(regions), std::move(embeddings), std::move(weights)};
}

WeightedDescriptionSet weight_descriptions(std::vector<std::string> texts,
                                           std::vector<EmbeddingVector> embeddings,
                                           const EmbeddingVector& caption, double temperature) {
  if (texts.size() != embeddings.size()) {
    throw InvalidParams("one embedding per description required");
  }
  auto weights = softmax_weights(cosines_to(embeddings, caption), temperature);
  return {std::move(texts), std::move(embeddings), std::move(weights)};
}

AlignmentMatrix::AlignmentMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw InvalidParams("matrix entry count does not match its shape");
  }
  score_ = compensated_sum(entries_);
}

AlignmentMatrix build_matrix(const WeightedCropSet& crops, const WeightedDescriptionSet& descs,
                             OpCounters* counters) {
  if (crops.size() == 0 || descs.size() == 0) {
    throw EmptyInput("alignment needs at least one crop and one description");
  }
  if (crops.embeddings.size() != crops.size() || crops.weights.size() != crops.size() ||
      descs.embeddings.size() != descs.size() || descs.weights.size() != descs.size()) {
    throw InvalidParams("weighted set fields have different lengths");
  }
  std::vector<double> entries;
  entries.reserve(crops.size() * descs.size());
  for (std::size_t s = 0; s < crops.size(); ++s) {
    for (std::size_t t = 0; t < descs.size(); ++t) {
      entries.push_back(crops.weights[s] * descs.weights[t] *
                        cosine(crops.embeddings[s], descs.embeddings[t]));
    }
  }
  if (counters != nullptr) {
    counters->matrix_entries += entries.size();
  }
  return AlignmentMatrix(crops.size(), descs.size(), std::move(entries));
}

SelectionSet select_topk(const AlignmentMatrix& matrix, std::size_t topk, OpCounters* counters) {
  if (topk == 0) {
    throw InvalidParams("topK must be at least 1");
  }
  const auto entries = matrix.entries();
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t k = std::min(topk, order.size());

  std::uint64_t comparisons = 0;
  // Flat index order equals (row, col) lexicographic order.
  auto better = [&](std::size_t a, std::size_t b) {
    ++comparisons;
    return entries[a] > entries[b] || (entries[a] == entries[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), better);
  if (counters != nullptr) {
    counters->sort_comparisons += comparisons;
  }

  SelectionSet out;
  out.indices.reserve(k);
  std::vector<bool> seen(matrix.rows(), false);
  for (std::size_t i = 0; i < k; ++i) {
    const MatrixIndex idx{order[i] / matrix.cols(), order[i] % matrix.cols()};
    out.indices.push_back(idx);
    if (!seen[idx.row]) {
      seen[idx.row] = true;
      out.rows.push_back(idx.row);
    }
  }
  return out;
}

}  // namespace lgca
