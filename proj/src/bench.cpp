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

#include "lgca/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "lgca/error.hpp"
#include "lgca/rng.hpp"

namespace lgca::bench {

namespace {

constexpr std::size_t kDim = 32;
constexpr int kGridCells = 16;
constexpr int kImageSide = 256;
constexpr int kVocabulary = 12;
constexpr int kTokensPerDescription = 3;

std::string feature_name(int i) { return "feature" + std::to_string(i); }

}  // namespace

PairFixture make_pair_fixture(int n_descriptions, std::uint64_t seed) {
  if (n_descriptions < 1) {
    throw InvalidParams("a pair fixture needs at least one description");
  }
  SplitMix64 rng(seed);
  std::map<std::string, std::vector<double>> lexicon;
  for (int i = 0; i < kVocabulary; ++i) {
    lexicon.emplace(feature_name(i), seeded_prototype(rng.next(), kDim));
  }
  FeatureGrid grid;
  grid.rows = kGridCells;
  grid.cols = kGridCells;
  for (int i = 0; i < kGridCells * kGridCells; ++i) {
    grid.labels.push_back(feature_name(static_cast<int>(rng.index(kVocabulary))));
  }
  PairFixture f;
  f.world = std::make_shared<const ToyWorld>(
      kDim, std::move(lexicon), std::map<std::string, FeatureGrid>{{"bench", std::move(grid)}});
  f.image = ImageFrame("bench", kImageSide, kImageSide);
  f.caption = feature_name(0);
  for (int d = 0; d < n_descriptions; ++d) {
    std::string text;
    for (int t = 0; t < kTokensPerDescription; ++t) {
      text += (t ? " " : "") + feature_name(static_cast<int>(rng.index(kVocabulary)));
    }
    f.descriptions.push_back(std::move(text));
  }
  return f;
}

OpCounters run_counted(const PairFixture& fixture, const LgcaConfig& config, Model model) {
  const ToyEncoder encoder(fixture.world);
  OpCounters counters;
  const ImageContext ctx = prepare_image(fixture.image, config, encoder, &counters);
  const auto descs = prepare_descriptions(fixture.caption, fixture.descriptions,
                                          config.temperature, encoder, &counters);
  if (model == Model::q) {
    baseline_q_similarity(ctx, descs, &counters);
  } else {
    lgca_similarity(ctx, descs, config, encoder, &counters);
  }
  return counters;
}

std::uint64_t entry_bound(int n_crops, int n_descriptions) {
  const Schedule s = make_schedule(n_crops, ScheduleMode::halving);
  std::uint64_t rows = static_cast<std::uint64_t>(n_crops);
  for (const int k : s.topk_per_step) {
    rows += static_cast<std::uint64_t>(k);
  }
  return rows * static_cast<std::uint64_t>(n_descriptions);
}

nlohmann::json ComplexityReport::to_json() const {
  auto counters_json = [](const OpCounters& c) {
    return nlohmann::json{{"matrix_entries", c.matrix_entries},
                          {"sort_comparisons", c.sort_comparisons},
                          {"encoder_calls", c.encoder_calls},
                          {"expansions", c.expansions}};
  };
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& p : points) {
    grid.push_back({{"n", p.n},
                    {"m", p.m},
                    {"lgca", counters_json(p.lgca)},
                    {"q", counters_json(p.q)},
                    {"ratio_entries", p.ratio_entries},
                    {"ratio_total", p.ratio_total},
                    {"sort_constant", p.sort_constant},
                    {"wall_ratio", p.wall_ratio}});
  }
  return {{"model", q_only ? "q" : "lgca"},
          {"exponents", {{"crops", 1}, {"descriptions", 1}}},
          {"max_sort_constant", kMaxSortConstant},
          {"fitted_constant", fitted_constant},
          {"grid", std::move(grid)}};
}

std::string ComplexityReport::to_csv() const {
  std::ostringstream out;
  out << "N,M,entries_q,entries_lgca,comparisons_lgca,ratio\n";
  for (const auto& p : points) {
    char ratio[32];
    std::snprintf(ratio, sizeof(ratio), "%.9g", p.ratio_entries);
    out << p.n << ',' << p.m << ',' << p.q.matrix_entries << ',' << p.lgca.matrix_entries << ','
        << p.lgca.sort_comparisons << ',' << ratio << '\n';
  }
  return out.str();
}

ComplexityReport verify_bound(const std::vector<int>& n_grid, const std::vector<int>& m_grid,
                              int trials, const LgcaConfig& base, bool q_only) {
  if (n_grid.empty() || m_grid.empty()) {
    throw InvalidParams("bench grids must be non-empty");
  }
  if (trials < 1) {
    throw InvalidParams("bench needs at least one trial");
  }
  for (const int n : n_grid) {
    if (n < 2) {
      throw DegenerateN("bench grid N must be at least 2, got " + std::to_string(n));
    }
  }
  for (const int m : m_grid) {
    if (m < 1) {
      throw InvalidParams("bench grid M must be at least 1, got " + std::to_string(m));
    }
  }

  using clock = std::chrono::steady_clock;
  auto timed = [&](const PairFixture& f, const LgcaConfig& cfg, Model model, double& best) {
    const auto t0 = clock::now();
    OpCounters c = run_counted(f, cfg, model);
    best = std::min(best, std::chrono::duration<double>(clock::now() - t0).count());
    return c;
  };

  ComplexityReport report;
  report.q_only = q_only;
  for (const int n : n_grid) {
    for (const int m : m_grid) {
      LgcaConfig cfg = base;
      cfg.crop.n_crops = n;
      cfg.step_weights.clear();
      const std::string where = "N=" + std::to_string(n) + ", M=" + std::to_string(m);
      const PairFixture fixture =
          make_pair_fixture(m, base.crop.seed ^ (static_cast<std::uint64_t>(n) << 32 | m));
      const Model model = q_only ? Model::q : Model::lgca;

      GridPoint p;
      p.n = n;
      p.m = m;
      double best_model = std::numeric_limits<double>::infinity();
      double best_q = std::numeric_limits<double>::infinity();
      for (int t = 0; t < trials; ++t) {
        const OpCounters run = timed(fixture, cfg, model, best_model);
        const OpCounters q = timed(fixture, cfg, Model::q, best_q);
        if (t > 0 && (!(run == p.lgca) || !(q == p.q))) {
          throw BoundViolated("counters differ between reruns at " + where);
        }
        p.lgca = run;
        p.q = q;
      }
      const double nm = static_cast<double>(n) * m;
      p.ratio_entries = static_cast<double>(p.lgca.matrix_entries) / static_cast<double>(p.q.matrix_entries);
      p.ratio_total = static_cast<double>(p.lgca.total()) / static_cast<double>(p.q.total());
      p.sort_constant = static_cast<double>(p.lgca.sort_comparisons) / (nm * std::log2(nm));
      p.wall_ratio = best_q > 0.0 ? best_model / best_q : 1.0;

      if (p.lgca.matrix_entries > 2ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(m)) {
        throw BoundViolated("matrix entries " + std::to_string(p.lgca.matrix_entries) +
                            " exceed 2*N*M at " + where);
      }
      if (p.sort_constant > kMaxSortConstant) {
        throw BoundViolated("sort comparisons " + std::to_string(p.lgca.sort_comparisons) +
                            " exceed " + std::to_string(kMaxSortConstant) +
                            " * NM log2(NM) at " + where);
      }
      report.fitted_constant = std::max(report.fitted_constant, p.sort_constant);
      report.points.push_back(p);
    }
  }
  return report;
}

}  // namespace lgca::bench
