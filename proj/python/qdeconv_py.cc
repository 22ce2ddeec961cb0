// Copyright 2026 The qdeconv Authors
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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "qdeconv/channels.h"
#include "qdeconv/deconvolution.h"
#include "qdeconv/errors.h"
#include "qdeconv/experiments.h"
#include "qdeconv/inversion.h"
#include "qdeconv/shot_engine.h"

namespace py = pybind11;

namespace qdeconv {
namespace {

// Python objects cross the boundary as JSON text.
nlohmann::json ToJson(const py::handle &obj) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object FromJson(const nlohmann::json &j) { return py::module_::import("json").attr("loads")(j.dump()); }

NoiseModel ModelFrom(const py::dict &model) { return noise_model_from_json(ToJson(model)); }

py::array_t<double> ToArray(const Ptm &ptm) {
    py::array_t<double> out({4, 4});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < 4; ++i)
        for (py::ssize_t j = 0; j < 4; ++j) view(i, j) = ptm(i, j);
    return out;
}

ExperimentConfig ConfigFrom(ExperimentKind kind, const py::kwargs &kw) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    if (kind == ExperimentKind::PauliSweep) cfg.shots = 1024;
    for (const auto &[key, value] : kw) {
        const std::string k = key.cast<std::string>();
        if (k == "t1") {
            cfg.t1 = value.cast<double>();
        } else if (k == "t2") {
            cfg.t2 = value.cast<double>();
        } else if (k == "gate_time") {
            cfg.gate_time = value.cast<double>();
        } else if (k == "depths") {
            cfg.depths = value.cast<std::vector<int>>();
        } else if (k == "comparison") {
            cfg.comparison = value.cast<bool>();
        } else if (k == "px") {
            cfg.px = value.cast<double>();
        } else if (k == "py") {
            cfg.py = value.cast<double>();
        } else if (k == "pz") {
            cfg.pz = value.cast<double>();
        } else if (k == "thetas") {
            cfg.thetas = value.cast<int>();
        } else if (k == "shots") {
            cfg.shots = value.cast<std::size_t>();
        } else if (k == "seed") {
            cfg.seed = value.cast<std::uint64_t>();
        } else if (k == "deconvolve") {
            cfg.deconvolve = value.cast<bool>();
        } else if (k == "readout_matrix") {
            cfg.readout_matrix = value.cast<std::array<double, 4>>();
        } else if (k == "threads") {
            cfg.threads = value.cast<int>();
        } else {
            throw ConfigError("unknown option '" + k + "'");
        }
    }
    return cfg;
}

py::object RunCurve(ExperimentKind kind, const py::kwargs &kw) {
    const ExperimentConfig cfg = ConfigFrom(kind, kw);
    Curve curve;
    {
        py::gil_scoped_release release;
        curve = kind == ExperimentKind::PauliSweep ? run_pauli_sweep(cfg) : run_decoherence_decay(cfg);
    }
    return FromJson(curve_to_json(curve, to_json(cfg)));
}

}  // namespace

PYBIND11_MODULE(_qdeconv, m) {
    m.doc() = "Deconvolution of single-qubit noise from Pauli expectation values";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", error);
    py::register_exception<NonInvertible>(m, "NonInvertible", error);
    py::register_exception<CorrectionOverflow>(m, "CorrectionOverflow", error);
    py::register_exception<DegenerateFit>(m, "DegenerateFit", error);
    py::register_exception<SingularAssignment>(m, "SingularAssignment", error);
    py::register_exception<ConfigError>(m, "ConfigError", error);

    m.def(
        "describe", [](const py::dict &model) { return describe(ModelFrom(model)); }, py::arg("model"),
        "Human-readable summary of a noise model.");
    m.def(
        "ptm", [](const py::dict &model) { return ToArray(ptm_of(kraus_of(ModelFrom(model)))); }, py::arg("model"),
        "Pauli transfer matrix of a noise model as a 4x4 array.");
    m.def(
        "inverse_ptm", [](const py::dict &model) { return ToArray(inverse_of(ModelFrom(model)).ptm); },
        py::arg("model"), "Pauli transfer matrix of the exact inverse map.");
    m.def(
        "correction",
        [](const py::dict &model, const std::string &axis, int depth) {
            const NoiseModel nm = ModelFrom(model);
            const Axis a = parse_axis(axis);
            Correction c;
            if (depth == 1) {
                c = correction_for(nm, a);
            } else if (const auto *d = std::get_if<Decoherence>(&nm)) {
                c = correction_for_repeated(*d, a, depth);
            } else {
                throw ConfigError("depth other than 1 needs a decoherence model");
            }
            return py::make_tuple(c.factor, c.offset);
        },
        py::arg("model"), py::arg("axis"), py::arg("depth") = 1,
        "Correction (factor, offset) with mitigated = factor * (noisy + offset).");
    m.def(
        "channel_report", [](const py::dict &model) { return FromJson(channel_report(ModelFrom(model))); },
        py::arg("model"), "Kraus, PTM, Choi and inverse diagnostics as a dict.");

    m.def(
        "mean_from_counts",
        [](std::size_t n0, std::size_t n1) {
            const EstimationResult e = mean_from_counts({n0 + n1, n0, n1, Axis::Z});
            return py::make_tuple(e.mean, e.std_error);
        },
        py::arg("n0"), py::arg("n1"), "Sample mean of a +-1 observable and its standard error.");
    m.def(
        "mitigate_readout",
        [](double f0, double f1, const std::array<double, 4> &a) {
            const MitigatedFrequencies r = mitigate_readout({f0, f1}, AssignmentMatrix(a[0], a[1], a[2], a[3]));
            return py::make_tuple(r.p[0], r.p[1], r.clipped);
        },
        py::arg("f0"), py::arg("f1"), py::arg("assignment"),
        "Inverts a row-major assignment matrix [a00, a01, a10, a11]; returns (p0, p1, clipped).");

    m.def(
        "run_decay", [](const py::kwargs &kw) { return RunCurve(ExperimentKind::DecoherenceDecay, kw); },
        "Simulated decoherence decay of <sigma_x>. Returns the curve as a dict.");
    m.def(
        "run_sweep", [](const py::kwargs &kw) { return RunCurve(ExperimentKind::PauliSweep, kw); },
        "Simulated general-Pauli sweep over Bloch angles. Returns the curve as a dict.");
    m.def(
        "fit_gate_time",
        [](const std::vector<int> &depths, const std::vector<double> &means, const std::vector<double> &std_errors,
           double t1, double t2) {
            if (depths.size() != means.size() || depths.size() != std_errors.size()) {
                throw ConfigError("depths, means and std_errors must have equal length");
            }
            std::vector<DecayPoint> data;
            for (std::size_t i = 0; i < depths.size(); ++i) data.push_back({depths[i], means[i], std_errors[i]});
            const GateTimeFit f = fit_gate_time(data, t1, t2);
            return py::make_tuple(f.t, f.t_std_error);
        },
        py::arg("depths"), py::arg("means"), py::arg("std_errors"), py::arg("t1"), py::arg("t2"),
        "Fits the gate time of a decay curve. Returns (t, t_std_error).");
}

}  // namespace qdeconv
