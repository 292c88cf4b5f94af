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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "lgca/alignment.hpp"
#include "lgca/error.hpp"
#include "lgca/pipeline.hpp"
#include "lgca/toy_encoder.hpp"

using namespace lgca;

namespace {

struct Figure {
  ToyEncoder encoder;
  ImageFrame image;
  std::map<std::string, std::vector<std::string>> descriptions;
};

Figure figure() {
  const auto dir = testing::fixture_dir() / "tern_swan";
  auto world = std::make_shared<ToyWorld>(ToyWorld::load(dir / "world.json"));
  std::ifstream in(dir / "descriptions.json");
  const auto doc = nlohmann::json::parse(in);
  return {ToyEncoder(world), ImageFrame("tern", 300, 100),
          doc.get<std::map<std::string, std::vector<std::string>>>()};
}

LgcaConfig figure_config() {
  LgcaConfig c;
  c.crop = {100, 0.5, 0.9, 7};
  c.tau = 1.25;
  return c;
}

}  // namespace

TEST_CASE("halving schedule examples") {
  const auto s = make_schedule(100, ScheduleMode::halving);
  CHECK(s.steps == 6);
  CHECK(s.topk_per_step == std::vector<int>{50, 25, 12, 6, 3, 1});
  CHECK(make_schedule(2, ScheduleMode::halving).topk_per_step == std::vector<int>{1});
  CHECK(make_schedule(3, ScheduleMode::halving).topk_per_step == std::vector<int>{1});
  CHECK_THROWS_AS(make_schedule(1, ScheduleMode::halving), DegenerateN);
  CHECK_THROWS_AS(make_schedule(0, ScheduleMode::halving), DegenerateN);
}

TEST_CASE("fixed_initial schedule examples") {
  const auto s = make_schedule(100, ScheduleMode::fixed_initial, 10);
  CHECK(s.topk_per_step == std::vector<int>{10, 5, 2, 1});
  CHECK(s.steps == 4);
  CHECK(make_schedule(100, ScheduleMode::fixed_initial, 1).topk_per_step == std::vector<int>{1});
  CHECK_THROWS_AS(make_schedule(100, ScheduleMode::fixed_initial, 0), InvalidParams);
}

TEST_CASE("halving schedule closed form") {
  for (int n = 2; n <= 4096; ++n) {
    const auto s = make_schedule(n, ScheduleMode::halving);
    REQUIRE(s.steps == static_cast<int>(s.topk_per_step.size()));
    CHECK((n >> s.steps) == 1);
    CHECK((n >> (s.steps + 1)) == 0);
    for (int j = 0; j < s.steps; ++j) {
      CHECK(s.topk_per_step[j] == (n >> (j + 1)));
    }
  }
}

TEST_CASE("schedule mode names round-trip") {
  CHECK(parse_schedule_mode(to_string(ScheduleMode::halving)) == ScheduleMode::halving);
  CHECK(parse_schedule_mode("fixed_initial") == ScheduleMode::fixed_initial);
  CHECK_THROWS_AS(parse_schedule_mode("linear"), InvalidParams);
}

TEST_CASE("config validation") {
  LgcaConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.resolved_step_weights() == std::vector<double>(6, 1.0 / 6.0));
  c.step_weights = {1, 0, 0};
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c.step_weights = {0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c.step_weights = {1, 0, 0, 0, 0, -0.1};
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c = {};
  c.tau = 1.0;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c = {};
  c.temperature = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
}

TEST_CASE("planted feature scores 0.72 and drops after expansion") {
  const auto f = figure();
  const auto desc = f.encoder.embed_text(f.descriptions.at("swan").front());
  const Region local{100, 20, 60};
  const double before = cosine(f.encoder.embed_image_patch(f.image, local), desc);
  CHECK(before == doctest::Approx(0.72).epsilon(1e-12));
  const Region grown = expand_region(local, 1.25, f.image);
  CHECK(grown == Region{93, 13, 75});
  const double after = cosine(f.encoder.embed_image_patch(f.image, grown), desc);
  CHECK(after < before);
}

TEST_CASE("expansion step on a single crop") {
  const auto f = figure();
  const LgcaConfig config = figure_config();
  ImageContext ctx = prepare_image(f.image, config, f.encoder);
  WeightedCropSet one;
  one.regions = {{100, 20, 60}};
  one.embeddings = {f.encoder.embed_image_patch(f.image, one.regions[0])};
  one.weights = {1.0};
  const auto descs = prepare_descriptions("swan", f.descriptions.at("swan"), 1.0, f.encoder);
  for (const int k : {1, 7}) {
    const auto [next, trace] = expansion_step(one, descs, k, 1.25, ctx, 1.0, f.encoder);
    CHECK(next.regions == std::vector<Region>{{93, 13, 75}});
    CHECK(next.weights == std::vector<double>{1.0});
    CHECK(trace.crops_in == 1);
    CHECK(trace.crops_out == 1);
    CHECK(trace.score == doctest::Approx(0.72).epsilon(1e-12));
  }
}

TEST_CASE("expansion step keeps only the distinct selected rows") {
  std::map<std::string, std::vector<double>> lex{{"a", {1, 0, 0}}, {"b", {0, 1, 0}},
                                                 {"c", {0, 0, 1}}};
  auto world = std::make_shared<ToyWorld>(
      3, lex, std::map<std::string, FeatureGrid>{{"m", FeatureGrid{1, 3, {"a", "c", "a"}}}});
  const ToyEncoder enc(world);
  const ImageFrame img("m", 30, 10);
  LgcaConfig config;
  config.crop = {3, 0.5, 0.9, 1};
  ImageContext ctx{&img, enc.embed_image(img), {}};

  std::vector<Region> regions{{0, 0, 10}, {10, 0, 10}, {20, 0, 10}};
  std::vector<EmbeddingVector> emb;
  for (const auto& r : regions) {
    emb.push_back(enc.embed_image_patch(img, r));
  }
  const auto crops = weight_crops(regions, emb, ctx.whole);
  const auto descs = weight_descriptions(
      {"a", "a b"}, {enc.embed_text("a"), enc.embed_text("a b")}, enc.embed_text("a"));
  const auto m = build_matrix(crops, descs);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  OpCounters counters;
  const auto [next, trace] = expansion_step(crops, descs, 4, 1.25, ctx, 1.0, enc, &counters);
  CHECK(trace.crops_out == 2);
  CHECK(next.size() == 2);
  CHECK(trace.selected.size() == 4);
  CHECK(trace.entries_computed == 6);
  CHECK(counters.matrix_entries == 6);
  CHECK(counters.expansions == 2);
  CHECK(next.regions[0].contains(regions[0]));
  CHECK(next.regions[1].contains(regions[2]));
}

TEST_CASE("first basis step weights reduce to the baseline exactly") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto pair = testing::random_pair(seed);
    const ToyEncoder enc(pair.world);
    LgcaConfig config;
    config.crop = {static_cast<int>(2 + seed * 3), 0.4, 0.95, seed};
    config.step_weights.assign(config.schedule().steps, 0.0);
    config.step_weights[0] = 1.0;
    const auto lgca = lgca_similarity(pair.image, pair.caption, pair.descriptions, config, enc);
    const double q = baseline_q_similarity(pair.image, pair.caption, pair.descriptions, config, enc);
    CHECK(lgca.sim == q);
    CHECK(lgca.first_score() == q);
  }
}

TEST_CASE("step weights act linearly") {
  const auto pair = testing::random_pair(3);
  const ToyEncoder enc(pair.world);
  LgcaConfig config;
  config.crop = {40, 0.5, 0.9, 3};
  config.step_weights = {0.1, 0.4, 0.2, 0.2, 0.1};
  const double base = lgca_similarity(pair.image, pair.caption, pair.descriptions, config, enc).sim;
  for (const double c : {0.5, 3.0, 17.0}) {
    auto scaled = config;
    for (auto& a : scaled.step_weights) {
      a *= c;
    }
    const double s = lgca_similarity(pair.image, pair.caption, pair.descriptions, scaled, enc).sim;
    CHECK(s == doctest::Approx(c * base).epsilon(1e-12));
  }
}

TEST_CASE("frontier shrinks and work stays bounded") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pair = testing::random_pair(seed, 80, 60, 6, 1 + static_cast<int>(seed % 7));
    const ToyEncoder enc(pair.world);
    LgcaConfig config;
    config.crop = {static_cast<int>(2 + 7 * seed), 0.5, 0.9, seed};
    if (seed % 3 == 0) {
      config.mode = ScheduleMode::fixed_initial;
      config.fixed_topk = 1 + static_cast<int>(seed % 11);
    }
    OpCounters counters;
    const auto r = lgca_similarity(pair.image, pair.caption, pair.descriptions, config, enc, &counters);
    const auto sched = config.schedule();
    REQUIRE(r.steps.size() == sched.topk_per_step.size());
    const std::uint64_t n = config.crop.n_crops;
    const std::uint64_t m = pair.descriptions.size();
    std::uint64_t entries = 0;
    std::uint64_t bound = n * m;
    std::size_t prev_out = n;
    for (std::size_t j = 0; j < r.steps.size(); ++j) {
      const auto& s = r.steps[j];
      CHECK(s.crops_out <= static_cast<std::size_t>(s.topk));
      CHECK(s.crops_in == prev_out);
      CHECK(s.entries_computed == s.crops_in * m);
      entries += s.entries_computed;
      bound += static_cast<std::uint64_t>(s.topk) * m;
      prev_out = s.crops_out;
    }
    CHECK(sched.topk_per_step.back() == 1);
    CHECK(r.steps.back().crops_out == 1);
    CHECK(counters.matrix_entries == entries);
    CHECK(entries <= bound);
    if (config.mode == ScheduleMode::halving) {
      CHECK(bound <= 2 * n * m);
    }
  }
}

TEST_CASE("argmax breaks ties by the smallest label") {
  using P = std::pair<std::string, double>;
  const std::vector<P> v{{"pear", 0.5}, {"apple", 0.5}, {"fig", 0.1}};
  CHECK(argmax_label(v) == "apple");
  const std::vector<P> w{{"pear", 0.6}, {"apple", 0.5}};
  CHECK(argmax_label(w) == "pear");
  CHECK_THROWS_AS(argmax_label({}), EmptyInput);
}

TEST_CASE("classify with one candidate and with tied candidates") {
  const auto pair = testing::random_pair(11);
  const ToyEncoder enc(pair.world);
  LgcaConfig config;
  config.crop = {16, 0.5, 0.9, 11};
  const auto descs = prepare_descriptions(pair.caption, pair.descriptions, 1.0, enc);
  const std::vector<Candidate> one{{"zebra", descs}};
  CHECK(classify(pair.image, one, config, enc).predicted == "zebra");
  const std::vector<Candidate> tied{{"zebra", descs}, {"aardvark", descs}};
  const auto r = classify(pair.image, tied, config, enc);
  CHECK(r.scores[0].sim == r.scores[1].sim);
  CHECK(r.predicted == "aardvark");
  CHECK(r.predicted_by_q == "aardvark");
  CHECK_THROWS_AS(classify(pair.image, std::vector<Candidate>{}, config, enc), EmptyInput);
}

TEST_CASE("scaling step weights never changes the prediction") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = testing::random_pair(seed);
    const ToyEncoder enc(a.world);
    LgcaConfig config;
    config.crop = {24, 0.5, 0.9, seed};
    std::vector<Candidate> cands;
    for (int l = 0; l < 3; ++l) {
      std::vector<std::string> texts{a.descriptions[l], a.descriptions[(l + 1) % 4]};
      cands.push_back({"l" + std::to_string(l), prepare_descriptions("f" + std::to_string(l),
                                                                     texts, 1.0, enc)});
    }
    const auto base = classify(a.image, cands, config, enc);
    auto scaled = config;
    scaled.step_weights.assign(config.schedule().steps, 1.0 / config.schedule().steps);
    for (auto& w : scaled.step_weights) {
      w *= 9.5;
    }
    CHECK(classify(a.image, cands, scaled, enc).predicted == base.predicted);
  }
}

TEST_CASE("planted scenario: expansion recovers the true label") {
  const auto f = figure();
  const LgcaConfig config = figure_config();
  std::vector<Candidate> cands;
  for (const auto& [label, texts] : f.descriptions) {
    cands.push_back({label, prepare_descriptions(label, texts, 1.0, f.encoder)});
  }
  const auto r = classify(f.image, cands, config, f.encoder);
  CHECK(r.predicted == "tern");
  CHECK(r.predicted_by_q == "swan");
}

TEST_CASE("classification is deterministic") {
  const auto f = figure();
  const LgcaConfig config = figure_config();
  std::vector<Candidate> cands;
  for (const auto& [label, texts] : f.descriptions) {
    cands.push_back({label, prepare_descriptions(label, texts, 1.0, f.encoder)});
  }
  auto dump = [&] {
    std::ostringstream out;
    out.precision(17);
    for (const auto& s : classify(f.image, cands, config, f.encoder).scores) {
      out << s.label << ' ' << s.sim << ' ' << s.q_score;
      for (const auto& t : s.steps) {
        out << ' ' << to_json(t).dump();
      }
      out << '\n';
    }
    return out.str();
  };
  CHECK(dump() == dump());
}
