#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lohseg/cusum.hpp"
#include "lohseg/errors.hpp"
#include "lohseg/estimation.hpp"
#include "lohseg/evaluate.hpp"
#include "lohseg/io.hpp"
#include "lohseg/model.hpp"
#include "lohseg/rng.hpp"
#include "lohseg/simulate.hpp"
#include "lohseg/version.hpp"

namespace py = pybind11;

namespace {

std::vector<lohseg::RegionLabel> labels_in(const std::vector<std::string>& s) {
    std::vector<lohseg::RegionLabel> out;
    out.reserve(s.size());
    for (const std::string& t : s) out.push_back(lohseg::region_label_from_string(t));
    return out;
}

std::vector<std::string> labels_out(const std::vector<lohseg::RegionLabel>& l) {
    std::vector<std::string> out;
    out.reserve(l.size());
    for (lohseg::RegionLabel x : l) out.emplace_back(lohseg::to_string(x));
    return out;
}

std::string model_repr(const lohseg::MixtureModel& m) {
    using lohseg::format_double;
    return "MixtureModel(het_weight=" + format_double(m.hetWeight) +
           ", lower=ZeroInflatedBeta(theta0=" + format_double(m.lower.theta0) +
           ", shape_b=" + format_double(m.lower.shapeB) +
           "), upper=OneInflatedBeta(theta1=" + format_double(m.upper.theta1) +
           ", shape_a=" + format_double(m.upper.shapeA) + "))";
}

} // namespace

PYBIND11_MODULE(_lohseg, m) {
    m.doc() = "CNNLOH detection in BAF sequences: inflated-beta mixture "
              "modeling with CUSUM segmentation";
    m.attr("__version__") = lohseg::kVersion;

    py::register_exception<lohseg::ValidationError>(m, "ValidationError",
                                                    PyExc_ValueError);
    py::register_exception<lohseg::ComputationError>(m, "ComputationError",
                                                     PyExc_RuntimeError);

    py::class_<lohseg::ZeroInflatedBeta>(m, "ZeroInflatedBeta")
        .def(py::init([](double theta0, double shapeB) {
                 return lohseg::ZeroInflatedBeta{theta0, shapeB};
             }),
             py::arg("theta0") = 0.0, py::arg("shape_b") = 1.0)
        .def_readwrite("theta0", &lohseg::ZeroInflatedBeta::theta0)
        .def_readwrite("shape_b", &lohseg::ZeroInflatedBeta::shapeB);

    py::class_<lohseg::OneInflatedBeta>(m, "OneInflatedBeta")
        .def(py::init([](double theta1, double shapeA) {
                 return lohseg::OneInflatedBeta{theta1, shapeA};
             }),
             py::arg("theta1") = 0.0, py::arg("shape_a") = 1.0)
        .def_readwrite("theta1", &lohseg::OneInflatedBeta::theta1)
        .def_readwrite("shape_a", &lohseg::OneInflatedBeta::shapeA);

    py::class_<lohseg::MixtureModel>(m, "MixtureModel")
        .def(py::init([](double hetWeight, lohseg::ZeroInflatedBeta lower,
                         lohseg::OneInflatedBeta upper) {
                 return lohseg::MixtureModel{hetWeight, lower, upper};
             }),
             py::arg("het_weight") = 0.5,
             py::arg("lower") = lohseg::ZeroInflatedBeta{},
             py::arg("upper") = lohseg::OneInflatedBeta{})
        .def_readwrite("het_weight", &lohseg::MixtureModel::hetWeight)
        .def_readwrite("lower", &lohseg::MixtureModel::lower)
        .def_readwrite("upper", &lohseg::MixtureModel::upper)
        .def("validate", &lohseg::MixtureModel::validate)
        .def("to_json", [](const lohseg::MixtureModel& mm) {
            return lohseg::model_to_json_text(mm);
        })
        .def_static("from_json", [](const std::string& text) {
            return lohseg::model_from_json_text(text);
        })
        .def("__repr__", &model_repr);

    py::class_<lohseg::Thresholds>(m, "Thresholds")
        .def_readonly("l0", &lohseg::Thresholds::l0)
        .def_readonly("l1", &lohseg::Thresholds::l1)
        .def("__repr__", [](const lohseg::Thresholds& t) {
            return "Thresholds(l0=" + lohseg::format_double(t.l0) +
                   ", l1=" + lohseg::format_double(t.l1) + ")";
        });

    py::class_<lohseg::Segment>(m, "Segment")
        .def_readonly("start", &lohseg::Segment::start)
        .def_readonly("end", &lohseg::Segment::end)
        .def_property_readonly("label",
                               [](const lohseg::Segment& s) {
                                   return std::string(lohseg::to_string(s.label));
                               })
        .def("__repr__", [](const lohseg::Segment& s) {
            return "Segment(start=" + std::to_string(s.start) +
                   ", end=" + std::to_string(s.end) + ", label='" +
                   lohseg::to_string(s.label) + "')";
        });

    py::class_<lohseg::Segmentation>(m, "Segmentation")
        .def_readonly("segments", &lohseg::Segmentation::segments)
        .def_readonly("change_points", &lohseg::Segmentation::changePoints)
        .def("labels",
             [](const lohseg::Segmentation& s) {
                 return labels_out(lohseg::expand_labels(s));
             })
        .def("__repr__", [](const lohseg::Segmentation& s) {
            return "Segmentation(" + std::to_string(s.segments.size()) +
                   " segments)";
        });

    py::class_<lohseg::EmReport>(m, "EmReport")
        .def_readonly("model", &lohseg::EmReport::model)
        .def_readonly("iterations", &lohseg::EmReport::iterations)
        .def_readonly("converged", &lohseg::EmReport::converged)
        .def_readonly("log_lik_trace", &lohseg::EmReport::logLikTrace)
        .def_property_readonly("log_lik", [](const lohseg::EmReport& r) {
            return r.logLikTrace.back();
        });

    py::class_<lohseg::ConfusionCounts>(m, "ConfusionCounts")
        .def_readonly("tp", &lohseg::ConfusionCounts::tp)
        .def_readonly("fp", &lohseg::ConfusionCounts::fp)
        .def_readonly("tn", &lohseg::ConfusionCounts::tn)
        .def_readonly("fn", &lohseg::ConfusionCounts::fn)
        .def("__add__",
             [](const lohseg::ConfusionCounts& a, const lohseg::ConfusionCounts& b) {
                 return a + b;
             })
        .def("__repr__", [](const lohseg::ConfusionCounts& c) {
            return "ConfusionCounts(tp=" + std::to_string(c.tp) +
                   ", fp=" + std::to_string(c.fp) + ", tn=" + std::to_string(c.tn) +
                   ", fn=" + std::to_string(c.fn) + ")";
        });

    py::class_<lohseg::Metrics>(m, "Metrics")
        .def_readonly("sensitivity", &lohseg::Metrics::sensitivity)
        .def_readonly("specificity", &lohseg::Metrics::specificity);

    m.def(
        "tbaf_transform",
        [](const std::vector<double>& baf, double snapEps) {
            return lohseg::tbaf_transform(baf, snapEps).values();
        },
        py::arg("baf"), py::arg("snap_eps") = lohseg::kSnapEps,
        "Fold BAF values to y = 2*|x - 1/2|.");

    m.def(
        "log_density",
        [](const lohseg::MixtureModel& model, double y) {
            return lohseg::log_density(model, y);
        },
        py::arg("model"), py::arg("y"),
        "Log mass/density of the mixture at y under Lebesgue + atoms at 0, 1.");

    m.def(
        "sample",
        [](const lohseg::MixtureModel& model, std::size_t n, std::uint64_t seed) {
            lohseg::Rng rng(seed);
            return lohseg::sample(model, n, rng).values();
        },
        py::arg("model"), py::arg("n"), py::arg("seed") = 0,
        "Draw n i.i.d. tBAF values from the mixture.");

    m.def("derive_loh_model", &lohseg::derive_loh_model, py::arg("base"),
          py::arg("delta"),
          "LOH counterpart of base: het weight scaled by delta.");

    m.def("floored", &lohseg::floored, py::arg("model"),
          "Copy with the three weights pushed inside [1e-6, 1 - 1e-6].");

    m.def(
        "fit_em",
        [](const std::vector<double>& tbaf, std::size_t maxIter, double llTol,
           std::optional<lohseg::MixtureModel> init) {
            lohseg::EmConfig cfg;
            cfg.maxIter = maxIter;
            cfg.llTol = llTol;
            cfg.init = std::move(init);
            return lohseg::fit_em(lohseg::TBafSequence(tbaf), cfg);
        },
        py::arg("tbaf"), py::arg("max_iter") = 500, py::arg("ll_tol") = 1e-8,
        py::arg("init") = std::nullopt,
        py::call_guard<py::gil_scoped_release>(),
        "Fit the mixture to transformed-BAF training data by EM.");

    m.def(
        "calibrate_threshold",
        [](const lohseg::MixtureModel& assumed,
           const lohseg::MixtureModel& alternative, std::size_t m_,
           double tolA, std::size_t nSim, std::uint64_t seed) {
            return lohseg::calibrate_threshold(assumed, alternative, m_, tolA,
                                               nSim, seed);
        },
        py::arg("assumed"), py::arg("alternative"), py::arg("m"),
        py::arg("tol_a") = 0.05, py::arg("n_sim") = 10000, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Empirical (1 - tol_a) quantile of R_m under the alternative model.");

    m.def(
        "segment",
        [](const std::vector<double>& tbaf, const lohseg::MixtureModel& nonLoh,
           double delta, double alpha, std::size_t minLen, std::size_t nSim,
           std::uint64_t seed, const std::string& initialState) {
            lohseg::SegmenterConfig cfg;
            cfg.delta = delta;
            cfg.tolA = alpha;
            cfg.minLen = minLen;
            cfg.nSim = nSim;
            cfg.seed = seed;
            cfg.initialState = lohseg::region_label_from_string(initialState);
            return lohseg::segment(lohseg::TBafSequence(tbaf), nonLoh, cfg);
        },
        py::arg("tbaf"), py::arg("model"), py::arg("delta") = 0.01,
        py::arg("alpha") = 0.05, py::arg("min_len") = 25,
        py::arg("n_sim") = 10000, py::arg("seed") = 0,
        py::arg("initial_state") = "NonLOH",
        py::call_guard<py::gil_scoped_release>(),
        "Alternating CUSUM segmentation of a transformed-BAF sequence.");

    m.def(
        "generate",
        [](std::size_t totalLen, std::size_t lohStart, std::size_t lohLen,
           double purity, double noiseSd, double hetRate, std::uint64_t seed) {
            lohseg::ScenarioConfig cfg;
            cfg.totalLen = totalLen;
            cfg.lohStart = lohStart;
            cfg.lohLen = lohLen;
            cfg.purity = purity;
            cfg.noiseSd = noiseSd;
            cfg.hetRate = hetRate;
            cfg.seed = seed;
            cfg.validate();
            lohseg::Rng rng(cfg.seed);
            const lohseg::LabeledSequence seq = lohseg::generate(cfg, rng);
            return std::make_pair(seq.baf, labels_out(seq.truth));
        },
        py::arg("total_len") = 1000, py::arg("loh_start") = 500,
        py::arg("loh_len") = 0, py::arg("purity") = 1.0,
        py::arg("noise_sd") = 0.03, py::arg("het_rate") = 0.33,
        py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>(),
        "Simulate a labeled BAF sequence; returns (baf, truth labels).");

    m.def(
        "confusion",
        [](const std::vector<std::string>& truth,
           const lohseg::Segmentation& predicted) {
            return lohseg::confusion(labels_in(truth), predicted);
        },
        py::arg("truth"), py::arg("predicted"),
        "Per-observation confusion counts with LOH as the positive class.");

    m.def("metrics", &lohseg::metrics, py::arg("counts"),
          "Sensitivity/specificity; None where the class is empty.");

    m.def(
        "compare_to_gold",
        [](const std::vector<std::string>& gold,
           const lohseg::Segmentation& predicted) {
            return lohseg::compare_to_gold(labels_in(gold), predicted);
        },
        py::arg("gold"), py::arg("predicted"),
        "Metrics of a predicted segmentation against reference labels.");
}
