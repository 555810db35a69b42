// Copyright 2026 The boostfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings: corpus, vectors, frequencies, classification and grids.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "boostfreq/classify.hpp"
#include "boostfreq/corpus.hpp"
#include "boostfreq/error.hpp"
#include "boostfreq/evaluate.hpp"
#include "boostfreq/frequencies.hpp"
#include "boostfreq/report.hpp"
#include "boostfreq/semantics.hpp"

namespace py = pybind11;
using namespace boostfreq;

namespace {

py::array_t<double> as_array(const std::vector<double>& values, std::size_t rows, std::size_t cols) {
  py::array_t<double> out({rows, cols});
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

FrequencyMatrix from_array(std::vector<std::string> doc_ids, std::vector<std::string> features,
                           py::array_t<double, py::array::c_style | py::array::forcecast> values) {
  if (values.ndim() != 2 || static_cast<std::size_t>(values.shape(0)) != doc_ids.size() ||
      static_cast<std::size_t>(values.shape(1)) != features.size())
    throw UsageError("values must have shape (len(doc_ids), len(features))");
  FrequencyMatrix m{std::move(doc_ids), std::move(features), {}};
  m.values.assign(values.data(), values.data() + values.size());
  return m;
}

BackgroundSelection selection_of(bool compat) {
  return compat ? BackgroundSelection::truncate_then_filter : BackgroundSelection::filter_then_truncate;
}

std::vector<DistanceMeasure> measures_of(const std::vector<std::string>& names) {
  std::vector<DistanceMeasure> out;
  for (const auto& n : names) out.push_back(parse_measure(n));
  return out;
}

GridOptions grid_options(std::vector<std::size_t> mfw, std::vector<double> backgrounds,
                         const std::vector<std::string>& measures, const std::string& folds,
                         std::size_t iterations, std::uint64_t seed, const std::string& scaling, bool compat,
                         int jobs) {
  GridOptions o;
  o.mfw_list = std::move(mfw);
  o.backgrounds = std::move(backgrounds);
  o.measures = measures_of(measures);
  if (folds == "rotation") o.folds.mode = FoldMode::deterministic_rotation;
  else if (folds == "random") o.folds.mode = FoldMode::random_stratified;
  else throw UsageError("folds must be 'rotation' or 'random'");
  o.folds.iterations = iterations;
  o.folds.seed = seed;
  if (scaling == "train") o.scaling = ScalingReference::training_set;
  else if (scaling == "combined") o.scaling = ScalingReference::combined;
  else throw UsageError("scaling must be 'train' or 'combined'");
  o.selection = selection_of(compat);
  o.jobs = jobs;
  return o;
}

std::vector<LabeledDoc> labels_from(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<LabeledDoc> out;
  for (const auto& [id, author] : pairs) out.push_back({id, author});
  return out;
}

const std::vector<std::string> kMeasureNames{"cosine-delta", "burrows-delta", "eder-delta", "manhattan"};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Word frequencies normalized by semantic neighbors, for authorship attribution";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def(
      "tokenize",
      [](std::string_view text, bool lowercase, bool keep_apostrophes, bool keep_hyphens) {
        return tokenize(text, {lowercase, keep_apostrophes, keep_hyphens});
      },
      py::arg("text"), py::arg("lowercase") = true, py::arg("keep_apostrophes") = false,
      py::arg("keep_hyphens") = false);

  py::class_<Document>(m, "Document")
      .def(py::init([](std::string id, std::string author, const std::vector<std::string>& tokens) {
             return make_document(std::move(id), std::move(author), tokens);
           }),
           py::arg("id"), py::arg("author"), py::arg("tokens"))
      .def_readonly("id", &Document::id)
      .def_readonly("author", &Document::author)
      .def_readonly("token_counts", &Document::token_counts)
      .def_readonly("total_tokens", &Document::total_tokens);

  m.def(
      "read_corpus",
      [](const std::filesystem::path& dir, bool lowercase, bool keep_apostrophes, bool keep_hyphens, int jobs) {
        return build_corpus(dir, {lowercase, keep_apostrophes, keep_hyphens}, jobs);
      },
      py::arg("directory"), py::arg("lowercase") = true, py::arg("keep_apostrophes") = false,
      py::arg("keep_hyphens") = false, py::arg("jobs") = 1);

  py::class_<DocTermMatrix>(m, "DocTermMatrix")
      .def_property_readonly("doc_ids", &DocTermMatrix::doc_ids)
      .def_property_readonly("vocab", &DocTermMatrix::vocab)
      .def_property_readonly("counts",
                             [](const DocTermMatrix& d) {
                               py::array_t<std::uint32_t> out({d.num_docs(), d.vocab_size()});
                               auto* p = out.mutable_data();
                               for (std::size_t r = 0; r < d.num_docs(); ++r)
                                 for (auto c : d.row(r)) *p++ = c;
                               return out;
                             })
      .def("count", &DocTermMatrix::count, py::arg("doc"), py::arg("word"))
      .def("top_words", [](const DocTermMatrix& d, std::size_t k) { return top_words(d, k); }, py::arg("k"))
      .def("save", [](const DocTermMatrix& d, const std::filesystem::path& p) { write_dtm_tsv(d, p); })
      .def_static("load", &read_dtm_tsv)
      .def("__repr__", [](const DocTermMatrix& d) {
        return "<DocTermMatrix " + std::to_string(d.num_docs()) + " docs x " + std::to_string(d.vocab_size()) +
               " words>";
      });

  m.def("build_dtm", [](const std::vector<Document>& docs) { return build_dtm(docs); }, py::arg("documents"));

  py::class_<VectorModel>(m, "VectorModel")
      .def(py::init([](const std::vector<std::string>& words,
                       py::array_t<double, py::array::c_style | py::array::forcecast> vectors) {
             if (vectors.ndim() != 2 || static_cast<std::size_t>(vectors.shape(0)) != words.size())
               throw UsageError("vectors must have shape (len(words), dims)");
             std::vector<double> data(vectors.data(), vectors.data() + vectors.size());
             return VectorModel(static_cast<std::size_t>(vectors.shape(1)), words, std::move(data));
           }),
           py::arg("words"), py::arg("vectors"))
      .def_property_readonly("dims", &VectorModel::dims)
      .def_property_readonly("words", &VectorModel::words)
      .def("vector",
           [](const VectorModel& v, const std::string& w) {
             auto i = v.index_of(w);
             if (!i) throw py::key_error(w);
             auto s = v.vector(*i);
             return std::vector<double>(s.begin(), s.end());
           })
      .def("similarity",
           [](const VectorModel& v, const std::string& a, const std::string& b) {
             auto i = v.index_of(a), j = v.index_of(b);
             if (!i) throw py::key_error(a);
             if (!j) throw py::key_error(b);
             return cosine_similarity(v.vector(*i), v.vector(*j));
           })
      .def("__contains__", [](const VectorModel& v, const std::string& w) { return v.index_of(w).has_value(); })
      .def("__len__", &VectorModel::size)
      .def("save", [](const VectorModel& v, const std::filesystem::path& p) { save_vectors(v, p); })
      .def_static("load", &load_vectors);

  m.def(
      "train_vectors",
      [](const std::vector<std::vector<std::string>>& docs, std::size_t dims, std::size_t window,
         std::uint64_t seed, std::uint64_t min_count) {
        PpmiSvdOptions o;
        o.dims = dims;
        o.window = window;
        o.seed = seed;
        o.min_count = min_count;
        py::gil_scoped_release release;
        return train_ppmi_svd(docs, o);
      },
      py::arg("token_streams"), py::arg("dims") = 100, py::arg("window") = 5, py::arg("seed") = 1,
      py::arg("min_count") = 1);

  py::class_<NeighborTable>(m, "NeighborTable")
      .def(py::init([](std::vector<std::string> targets,
                       const std::vector<std::vector<std::pair<std::string, double>>>& neighbors,
                       std::size_t depth) {
             if (targets.size() != neighbors.size()) throw UsageError("one neighbor list per target");
             NeighborTable t{std::move(targets), {}, depth};
             for (const auto& list : neighbors) {
               auto& row = t.neighbors.emplace_back();
               for (const auto& [w, s] : list) row.push_back({w, s});
             }
             return t;
           }),
           py::arg("targets"), py::arg("neighbors"), py::arg("depth"))
      .def_readonly("targets", &NeighborTable::targets)
      .def_readonly("depth", &NeighborTable::depth)
      .def_property_readonly("neighbors",
                             [](const NeighborTable& t) {
                               std::vector<std::vector<std::pair<std::string, double>>> out;
                               for (const auto& list : t.neighbors) {
                                 auto& row = out.emplace_back();
                                 for (const auto& n : list) row.emplace_back(n.word, n.similarity);
                               }
                               return out;
                             })
      .def("save", [](const NeighborTable& t, const std::filesystem::path& p) { write_neighbor_table_tsv(t, p); })
      .def_static("load", &read_neighbor_table_tsv);

  m.def(
      "neighbor_table",
      [](const VectorModel& model, const std::vector<std::string>& targets, std::size_t depth, int jobs) {
        py::gil_scoped_release release;
        return neighbor_table(model, targets, depth, jobs);
      },
      py::arg("model"), py::arg("targets"), py::arg("depth"), py::arg("jobs") = 1);

  py::class_<FrequencyMatrix>(m, "FrequencyMatrix")
      .def(py::init(&from_array), py::arg("doc_ids"), py::arg("features"), py::arg("values"))
      .def_readonly("doc_ids", &FrequencyMatrix::doc_ids)
      .def_readonly("features", &FrequencyMatrix::features)
      .def_property_readonly("values",
                             [](const FrequencyMatrix& f) { return as_array(f.values, f.rows(), f.cols()); })
      .def("leading_columns", &FrequencyMatrix::leading_columns, py::arg("k"))
      .def("save", [](const FrequencyMatrix& f, const std::filesystem::path& p) { write_frequency_tsv(f, p); })
      .def_static("load", &read_frequency_tsv);

  m.def(
      "classical_frequencies",
      [](const DocTermMatrix& dtm, const std::vector<std::string>& features) {
        return classical_frequencies(dtm, features);
      },
      py::arg("dtm"), py::arg("features"));
  m.def(
      "enhanced_frequencies",
      [](const DocTermMatrix& dtm, const NeighborTable& table, std::size_t n, bool compat, int jobs) {
        py::gil_scoped_release release;
        return enhanced_frequencies(dtm, table, n, selection_of(compat), jobs);
      },
      py::arg("dtm"), py::arg("table"), py::arg("n"), py::arg("compat") = true, py::arg("jobs") = 1);
  m.def(
      "enhanced_frequencies_radius",
      [](const DocTermMatrix& dtm, const VectorModel& model, const std::vector<std::string>& targets,
         double threshold, int jobs) {
        py::gil_scoped_release release;
        return enhanced_frequencies_radius(dtm, model, targets, threshold, jobs);
      },
      py::arg("dtm"), py::arg("model"), py::arg("targets"), py::arg("threshold"), py::arg("jobs") = 1);

  m.def(
      "distance",
      [](const std::vector<double>& a, const std::vector<double>& b, const std::string& measure) {
        std::vector<std::size_t> ranks(a.size());
        for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = i + 1;
        return distance(a, b, parse_measure(measure), ranks);
      },
      py::arg("a"), py::arg("b"), py::arg("measure"));
  m.def(
      "f1_macro",
      [](const std::vector<std::string>& predicted, const std::vector<std::string>& truth) {
        return f1_macro(predicted, truth);
      },
      py::arg("predicted"), py::arg("truth"));
  m.def(
      "evaluate",
      [](const FrequencyMatrix& freqs, const std::vector<std::pair<std::string, std::string>>& labels,
         const std::string& measure, const std::string& folds, std::size_t iterations, std::uint64_t seed,
         const std::string& scaling) {
        auto opts = grid_options({}, {}, {measure}, folds, iterations, seed, scaling, true, 1);
        auto docs = labels_from(labels);
        auto fs = make_folds(docs, opts.folds);
        return evaluate_features(freqs, docs, fs, opts.measures.front(), opts.scaling);
      },
      py::arg("freqs"), py::arg("labels"), py::arg("measure") = "cosine-delta", py::arg("folds") = "rotation",
      py::arg("iterations") = 3, py::arg("seed") = 1, py::arg("scaling") = "train");

  py::class_<ResultGrid>(m, "ResultGrid")
      .def_property_readonly("measure", [](const ResultGrid& g) { return std::string(to_string(g.measure)); })
      .def_property_readonly("mode", [](const ResultGrid& g) { return std::string(to_string(g.mode)); })
      .def_readonly("mfw", &ResultGrid::axis_mfw)
      .def_readonly("backgrounds", &ResultGrid::axis_background)
      .def_property_readonly("f1",
                             [](const ResultGrid& g) {
                               std::vector<double> v;
                               for (const auto& c : g.cells) v.push_back(c.f1);
                               return as_array(v, g.axis_mfw.size(), g.axis_background.size());
                             })
      .def_property_readonly("baseline",
                             [](const ResultGrid& g) {
                               std::vector<double> v;
                               for (const auto& c : g.baseline) v.push_back(c.f1);
                               return v;
                             })
      .def_property_readonly("gain",
                             [](const ResultGrid& g) {
                               auto map = gain_map(g);
                               return as_array(map.gains, g.axis_mfw.size(), g.axis_background.size());
                             })
      .def("heatmap_svg", [](const ResultGrid& g) { return render_heatmap_svg(g); });

  m.def(
      "grid_search",
      [](const DocTermMatrix& dtm, const std::vector<std::pair<std::string, std::string>>& labels,
         const NeighborTable& table, std::vector<std::size_t> mfw, std::vector<double> backgrounds,
         const std::vector<std::string>& measures, const std::string& folds, std::size_t iterations,
         std::uint64_t seed, const std::string& scaling, bool compat, int jobs) {
        auto opts = grid_options(std::move(mfw), std::move(backgrounds), measures, folds, iterations, seed, scaling,
                                 compat, jobs);
        auto docs = labels_from(labels);
        py::gil_scoped_release release;
        return grid_search(dtm, docs, table, opts);
      },
      py::arg("dtm"), py::arg("labels"), py::arg("table"), py::arg("mfw"), py::arg("backgrounds"),
      py::arg("measures") = kMeasureNames, py::arg("folds") = "rotation", py::arg("iterations") = 3,
      py::arg("seed") = 1, py::arg("scaling") = "train", py::arg("compat") = true, py::arg("jobs") = 1);
  m.def(
      "grid_search_radius",
      [](const DocTermMatrix& dtm, const std::vector<std::pair<std::string, std::string>>& labels,
         const VectorModel& model, std::vector<std::size_t> mfw, std::vector<double> thresholds,
         const std::vector<std::string>& measures, const std::string& folds, std::size_t iterations,
         std::uint64_t seed, const std::string& scaling, int jobs) {
        auto opts = grid_options(std::move(mfw), std::move(thresholds), measures, folds, iterations, seed, scaling,
                                 true, jobs);
        auto docs = labels_from(labels);
        py::gil_scoped_release release;
        return grid_search(dtm, docs, model, opts);
      },
      py::arg("dtm"), py::arg("labels"), py::arg("model"), py::arg("mfw"), py::arg("thresholds"),
      py::arg("measures") = kMeasureNames, py::arg("folds") = "rotation", py::arg("iterations") = 3,
      py::arg("seed") = 1, py::arg("scaling") = "train", py::arg("jobs") = 1);
  m.def(
      "write_results_csv",
      [](const std::vector<ResultGrid>& grids, const std::filesystem::path& p) { write_results_csv(grids, p); },
      py::arg("grids"), py::arg("path"));
}
