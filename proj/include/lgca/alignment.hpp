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

#ifndef LGCA_ALIGNMENT_HPP
#define LGCA_ALIGNMENT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgca/counters.hpp"
#include "lgca/embedding.hpp"
#include "lgca/geometry.hpp"

namespace lgca {

/// Neumaier-compensated sum, accumulated in index order.
double compensated_sum(std::span<const double> values) noexcept;

/// exp(x_i / T) / sum_j exp(x_j / T), evaluated with max subtraction.
/// Throws EmptyInput, or InvalidParams for non-finite input or T <= 0.
std::vector<double> softmax_weights(std::span<const double> similarities, double temperature = 1.0);

/// Cosine similarity, clamped to [-1, 1]. Throws DimMismatch.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

/// Crops of one image with their embeddings and softmax weights.
struct WeightedCropSet {
  std::vector<Region> regions;
  std::vector<EmbeddingVector> embeddings;
  std::vector<double> weights;

  std::size_t size() const noexcept { return regions.size(); }
  /// Throws InvalidParams when lengths differ or weights are not a
  /// positive distribution (sum within 1e-9 of 1).
  void validate() const;
};

struct WeightedDescriptionSet {
  std::vector<std::string> texts;
  std::vector<EmbeddingVector> embeddings;
  std::vector<double> weights;

  std::size_t size() const noexcept { return texts.size(); }
  void validate() const;
};

/// Weights each crop by softmax of its cosine with the whole-image embedding.
WeightedCropSet weight_crops(std::vector<Region> regions, std::vector<EmbeddingVector> embeddings,
                             const EmbeddingVector& whole_image, double temperature = 1.0);

/// Weights each description by softmax of its cosine with the caption.
WeightedDescriptionSet weight_descriptions(std::vector<std::string> texts,
                                           std::vector<EmbeddingVector> embeddings,
                                           const EmbeddingVector& caption,
                                           double temperature = 1.0);

/// Row-major |C| x |D| matrix of w_s * v_t * cos(c_s, d_t) and its sum.
class AlignmentMatrix {
 public:
  AlignmentMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t s, std::size_t t) const noexcept { return entries_[s * cols_ + t]; }
  std::span<const double> entries() const noexcept { return entries_; }
  double score() const noexcept { return score_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
  double score_;
};

/// Adds rows * cols to counters->matrix_entries. Throws EmptyInput or
/// DimMismatch.
AlignmentMatrix build_matrix(const WeightedCropSet& crops, const WeightedDescriptionSet& descs,
                             OpCounters* counters = nullptr);

struct MatrixIndex {
  std::size_t row;
  std::size_t col;
  bool operator==(const MatrixIndex&) const = default;
};

struct SelectionSet {
  std::vector<MatrixIndex> indices;  // best first
  std::vector<std::size_t> rows;     // distinct rows in first-selected order
};

/**
 * The min(topk, rows * cols) largest entries. Ties go to the smaller
 * (row, col) pair. Comparisons made by the partial sort are added to
 * counters->sort_comparisons. Throws InvalidParams when topk == 0.
 */
SelectionSet select_topk(const AlignmentMatrix& matrix, std::size_t topk,
                         OpCounters* counters = nullptr);

}  // namespace lgca

#endif  // LGCA_ALIGNMENT_HPP
