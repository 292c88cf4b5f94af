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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>
#include <pybind11/operators.h>

#include "lgca/alignment.hpp"
#include "lgca/bench.hpp"
#include "lgca/config.hpp"
#include "lgca/error.hpp"
#include "lgca/image_io.hpp"
#include "lgca/pipeline.hpp"

namespace py = pybind11;
using namespace lgca;

namespace {

py::dict step_dict(const StepTrace& t) {
  return py::module_::import("json").attr("loads")(to_json(t).dump());
}

py::dict result_dict(const LgcaResult& r) {
  py::list steps;
  for (const auto& s : r.steps) {
    steps.append(step_dict(s));
  }
  py::dict out;
  out["sim"] = r.sim;
  out["steps"] = steps;
  return out;
}

AlignmentMatrix to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw EmptyInput("matrix must be non-empty");
  }
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw InvalidParams("ragged matrix");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return AlignmentMatrix(rows.size(), rows.front().size(), std::move(flat));
}

}  // namespace

PYBIND11_MODULE(_lgca, m) {
  m.doc() = "Localized-globalized cross-alignment for zero-shot classification";

  auto error = py::register_exception<Error>(m, "LgcaError", PyExc_RuntimeError);
  py::register_exception<InvalidParams>(m, "InvalidParams", error);
  py::register_exception<EmptyInput>(m, "EmptyInput", error);
  py::register_exception<DimMismatch>(m, "DimMismatch", error);
  py::register_exception<EncoderUnavailable>(m, "EncoderUnavailable", error);
  py::register_exception<BoundViolated>(m, "BoundViolated", error);
  py::register_exception<ConfigError>(m, "ConfigError", error);
  py::register_exception<ManifestError>(m, "ManifestError", error);
  py::register_exception<DegenerateN>(m, "DegenerateN", m.attr("InvalidParams"));

  py::class_<Region>(m, "Region")
      .def(py::init([](int x0, int y0, int side) { return Region{x0, y0, side}; }), py::arg("x0"),
           py::arg("y0"), py::arg("side"))
      .def_readwrite("x0", &Region::x0)
      .def_readwrite("y0", &Region::y0)
      .def_readwrite("side", &Region::side)
      .def("contains", &Region::contains)
      .def(py::self == py::self)
      .def("__repr__", [](const Region& r) {
        return "Region(x0=" + std::to_string(r.x0) + ", y0=" + std::to_string(r.y0) +
               ", side=" + std::to_string(r.side) + ")";
      });

  py::class_<ImageFrame>(m, "ImageFrame")
      .def(py::init<std::string, int, int>(), py::arg("id"), py::arg("width"), py::arg("height"))
      .def_property_readonly("id", &ImageFrame::id)
      .def_property_readonly("width", &ImageFrame::width)
      .def_property_readonly("height", &ImageFrame::height);
  m.def("load_image", &load_image, py::arg("path"));

  py::class_<CropParams>(m, "CropParams")
      .def(py::init([](int n, double lo, double hi, std::uint64_t seed) {
             return CropParams{n, lo, hi, seed};
           }),
           py::arg("n_crops") = 100, py::arg("ratio_lo") = 0.5, py::arg("ratio_hi") = 0.9,
           py::arg("seed") = 0)
      .def_readwrite("n_crops", &CropParams::n_crops)
      .def_readwrite("ratio_lo", &CropParams::ratio_lo)
      .def_readwrite("ratio_hi", &CropParams::ratio_hi)
      .def_readwrite("seed", &CropParams::seed);

  m.def("sample_crops", &sample_crops, py::arg("image"), py::arg("params"));
  m.def("expand_region", &expand_region, py::arg("region"), py::arg("tau"), py::arg("image"));

  m.def(
      "softmax_weights",
      [](const std::vector<double>& s, double t) { return softmax_weights(s, t); },
      py::arg("similarities"), py::arg("temperature") = 1.0);
  m.def(
      "select_topk",
      [](const std::vector<std::vector<double>>& rows, std::size_t k) {
        const auto sel = select_topk(to_matrix(rows), k);
        std::vector<std::pair<std::size_t, std::size_t>> idx;
        for (const auto& i : sel.indices) {
          idx.emplace_back(i.row, i.col);
        }
        return py::make_tuple(idx, sel.rows);
      },
      py::arg("matrix"), py::arg("topk"),
      "Returns (indices, rows): the top-K (row, col) pairs, best first, and their distinct rows.");

  py::enum_<ScheduleMode>(m, "ScheduleMode")
      .value("halving", ScheduleMode::halving)
      .value("fixed_initial", ScheduleMode::fixed_initial);
  m.def(
      "make_schedule",
      [](int n, ScheduleMode mode, int k) { return make_schedule(n, mode, k).topk_per_step; },
      py::arg("n_crops"), py::arg("mode") = ScheduleMode::halving, py::arg("fixed_topk") = 10);

  py::class_<LgcaConfig>(m, "LgcaConfig")
      .def(py::init<>())
      .def_readwrite("crop", &LgcaConfig::crop)
      .def_readwrite("tau", &LgcaConfig::tau)
      .def_readwrite("step_weights", &LgcaConfig::step_weights)
      .def_readwrite("temperature", &LgcaConfig::temperature)
      .def_readwrite("mode", &LgcaConfig::mode)
      .def_readwrite("fixed_topk", &LgcaConfig::fixed_topk)
      .def("schedule", [](const LgcaConfig& c) { return c.schedule().topk_per_step; })
      .def("validate", &LgcaConfig::validate);

  py::class_<RunConfig>(m, "RunConfig")
      .def_readwrite("lgca", &RunConfig::lgca)
      .def_readwrite("encoder", &RunConfig::encoder)
      .def_readwrite("caption_template", &RunConfig::caption_template)
      .def_readwrite("descriptions", &RunConfig::descriptions);
  m.def("load_config", &load_config, py::arg("path"));

  py::class_<Encoder, std::shared_ptr<Encoder>>(m, "Encoder")
      .def_property_readonly("dim", &Encoder::dim)
      .def_property_readonly("name", &Encoder::name)
      .def("embed_text",
           [](const Encoder& e, const std::string& t) {
             const auto v = e.embed_text(t);
             return std::vector<double>(v.values().begin(), v.values().end());
           })
      .def("embed_image_patch", [](const Encoder& e, const ImageFrame& img, const Region& r) {
        const auto v = e.embed_image_patch(img, r);
        return std::vector<double>(v.values().begin(), v.values().end());
      });
  m.def(
      "make_encoder",
      [](const std::string& spec, int out_size) {
        return std::shared_ptr<Encoder>(make_encoder(spec, out_size));
      },
      py::arg("spec"), py::arg("out_size") = 224,
      "spec is 'toy:WORLD.json' or 'remote:HOST:PORT'.");

  m.def(
      "lgca_similarity",
      [](const ImageFrame& image, const std::string& caption,
         const std::vector<std::string>& descriptions, const LgcaConfig& config,
         const Encoder& encoder) {
        return result_dict(lgca_similarity(image, caption, descriptions, config, encoder));
      },
      py::arg("image"), py::arg("caption"), py::arg("descriptions"), py::arg("config"),
      py::arg("encoder"));
  m.def(
      "baseline_q_similarity",
      [](const ImageFrame& image, const std::string& caption,
         const std::vector<std::string>& descriptions, const LgcaConfig& config,
         const Encoder& encoder) {
        return baseline_q_similarity(image, caption, descriptions, config, encoder);
      },
      py::arg("image"), py::arg("caption"), py::arg("descriptions"), py::arg("config"),
      py::arg("encoder"));
  m.def(
      "classify",
      [](const ImageFrame& image, const std::map<std::string, std::vector<std::string>>& labels,
         const LgcaConfig& config, const Encoder& encoder, const std::string& caption_template) {
        std::vector<Candidate> cands;
        for (const auto& [label, texts] : labels) {
          cands.push_back({label, prepare_descriptions(render_caption(caption_template, label),
                                                       texts, config.temperature, encoder)});
        }
        const auto report = classify(image, cands, config, encoder);
        py::dict sims;
        py::dict q;
        for (const auto& s : report.scores) {
          sims[py::str(s.label)] = s.sim;
          q[py::str(s.label)] = s.q_score;
        }
        py::dict out;
        out["image_id"] = report.image_id;
        out["predicted"] = report.predicted;
        out["predicted_by_q"] = report.predicted_by_q;
        out["sims"] = sims;
        out["q_scores"] = q;
        return out;
      },
      py::arg("image"), py::arg("labels"), py::arg("config"), py::arg("encoder"),
      py::arg("caption_template") = "{label}");

  m.def(
      "verify_bound",
      [](const std::vector<int>& n_grid, const std::vector<int>& m_grid, int trials,
         bool q_only) {
        return bench::verify_bound(n_grid, m_grid, trials, LgcaConfig{}, q_only).to_json().dump();
      },
      py::arg("n_grid"), py::arg("m_grid"), py::arg("trials") = 1, py::arg("q_only") = false,
      "Returns the complexity report as a JSON string.");
  m.def("entry_bound", &bench::entry_bound, py::arg("n_crops"), py::arg("n_descriptions"));
}
