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

#ifndef LGCA_BENCH_HPP
#define LGCA_BENCH_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgca/counters.hpp"
#include "lgca/pipeline.hpp"
#include "lgca/toy_encoder.hpp"

// Operation-count check of the expansion overhead: LGCA against the
// non-expanding baseline on one image/caption pair per grid point.
namespace lgca::bench {

/// Largest allowed constant in comparisons <= c * N*M * log2(N*M).
inline constexpr double kMaxSortConstant = 4.0;

enum class Model { lgca, q };

/// One synthetic image/caption pair with M descriptions, toy encoder only.
struct PairFixture {
  std::shared_ptr<const ToyWorld> world;
  ImageFrame image;
  std::string caption;
  std::vector<std::string> descriptions;
};

/// Deterministic fixture: a random feature grid and `n_descriptions`
/// random token strings over the same vocabulary.
PairFixture make_pair_fixture(int n_descriptions, std::uint64_t seed);

/// Counts the work of one evaluation. Bit-identical across reruns.
OpCounters run_counted(const PairFixture& fixture, const LgcaConfig& config, Model model);

/// N*M + sum_j topk_j * M for the halving schedule: the analytic ceiling on
/// matrix entries, itself at most 2*N*M.
std::uint64_t entry_bound(int n_crops, int n_descriptions);

struct GridPoint {
  int n = 0;
  int m = 0;
  OpCounters lgca;  // holds Q's counters in Q-only mode
  OpCounters q;
  double ratio_entries = 0.0;
  double ratio_total = 0.0;
  /// comparisons / (N*M * log2(N*M)).
  double sort_constant = 0.0;
  /// min wall time ratio over trials, reported only.
  double wall_ratio = 0.0;
};

struct ComplexityReport {
  std::vector<GridPoint> points;
  double fitted_constant = 0.0;
  bool q_only = false;

  nlohmann::json to_json() const;
  /// Header: N,M,entries_q,entries_lgca,comparisons_lgca,ratio
  std::string to_csv() const;
};

/**
 * Runs every (N, M) pair `trials` times. Throws BoundViolated naming the
 * point when LGCA computes more than 2*N*M entries, when the fitted sort
 * constant exceeds kMaxSortConstant, or when reruns disagree. Throws
 * InvalidParams (DegenerateN) for empty grids or N < 2.
 */
ComplexityReport verify_bound(const std::vector<int>& n_grid, const std::vector<int>& m_grid,
                              int trials, const LgcaConfig& base, bool q_only = false);

}  // namespace lgca::bench

#endif  // LGCA_BENCH_HPP
