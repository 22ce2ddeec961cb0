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

#include "qdeconv/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <istream>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "qdeconv/errors.h"
#include "qdeconv/inversion.h"

namespace qdeconv {

using nlohmann::json;

namespace {

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any task is rethrown on the caller's thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &body) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (std::thread &t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Counts -> mean, passing through readout error and its mitigation when configured.
EstimationResult measured_mean(const ShotRecord &rec, const std::optional<AssignmentMatrix> &readout, Rng &rng) {
    if (!readout) return mean_from_counts(rec);
    return readout_mitigated_mean(apply_readout_error(rec, *readout, rng), *readout);
}

std::optional<AssignmentMatrix> readout_of(const ExperimentConfig &cfg) {
    if (!cfg.readout_matrix) return std::nullopt;
    const auto &a = *cfg.readout_matrix;
    return AssignmentMatrix(a[0], a[1], a[2], a[3]);
}

DensityMatrix state_from_coeffs(const PauliCoeffs &c) { return DensityMatrix::unchecked(reconstruct(c)); }

PauliCoeffs evolve(const Ptm &step, int m, const PauliCoeffs &c) {
    if (m == 0) return c;
    return apply_ptm(compose_n(step, m), c);
}

template <class F>
void with_field(const char *field, F &&check) {
    try {
        check();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string(field) + ": " + e.what());
    }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::DecoherenceDecay:
            return "decoherence-decay";
        case ExperimentKind::PauliSweep:
            return "pauli-sweep";
        case ExperimentKind::ChannelReport:
            return "channel-report";
    }
    return "unknown";
}

std::vector<int> ExperimentConfig::default_depths() {
    std::vector<int> d;
    for (int m = 0; m <= 200; m += 10) d.push_back(m);
    return d;
}

void validate(const ExperimentConfig &cfg) {
    if (cfg.shots < 2) throw ConfigError("shots: need at least 2 shots per basis");
    if (cfg.threads < 0) throw ConfigError("threads: must be nonnegative");
    if (cfg.readout_matrix) {
        with_field("readout-matrix", [&] { (void)readout_of(cfg); });
    }
    if (cfg.kind == ExperimentKind::DecoherenceDecay) {
        with_field("t1/t2/gate-time", [&] { (void)decoherence_from_times(cfg.t1, cfg.t2, cfg.gate_time); });
        if (cfg.depths.empty()) throw ConfigError("depths: list is empty");
        for (int m : cfg.depths)
            if (m < 0) throw ConfigError("depths: depths must be nonnegative");
    }
    if (cfg.kind == ExperimentKind::PauliSweep) {
        with_field("px/py/pz", [&] { validate(NoiseModel{GeneralPauli{cfg.px, cfg.py, cfg.pz}}); });
        if (cfg.thetas < 1) throw ConfigError("thetas: need at least one angle");
    }
}

json to_json(const ExperimentConfig &cfg) {
    json j;
    j["experiment"] = to_string(cfg.kind);
    if (cfg.kind == ExperimentKind::DecoherenceDecay) {
        j["t1"] = cfg.t1;
        j["t2"] = cfg.t2;
        j["gate_time"] = cfg.gate_time;
        j["depths"] = cfg.depths;
        j["comparison"] = cfg.comparison;
    } else if (cfg.kind == ExperimentKind::PauliSweep) {
        j["px"] = cfg.px;
        j["py"] = cfg.py;
        j["pz"] = cfg.pz;
        j["thetas"] = cfg.thetas;
    }
    j["shots"] = cfg.shots;
    j["seed"] = cfg.seed;
    j["deconvolve"] = cfg.deconvolve;
    j["readout_matrix"] = cfg.readout_matrix ? json(*cfg.readout_matrix) : json(nullptr);
    return j;
}

//--------------------------------------------------------------------------
// Experiments

Curve run_decoherence_decay(const ExperimentConfig &cfg, const Tolerances &tol) {
    validate(cfg);
    const Decoherence dec = decoherence_from_times(cfg.t1, cfg.t2, cfg.gate_time);
    const std::optional<AssignmentMatrix> readout = readout_of(cfg);
    if (cfg.deconvolve) {
        // Fail before sampling if the deepest point cannot be corrected.
        const int deepest = *std::max_element(cfg.depths.begin(), cfg.depths.end());
        (void)correction_for_repeated(dec, Axis::X, deepest, tol);
    }

    const Ptm step = ptm_of(kraus_of(dec));
    const Ptm dephasing_step = ptm_of(kraus_of(PhaseFlip{dec.p}));
    const Ptm damping_step = ptm_of(kraus_of(AmplitudeDamping{dec.gamma}));
    const PauliCoeffs plus{0.5, 0.5, 0.0, 0.0};

    Curve curve{"m", std::vector<CurvePoint>(cfg.depths.size())};
    parallel_for(cfg.depths.size(), cfg.threads, [&](std::size_t i) {
        const int m = cfg.depths[i];
        CurvePoint &pt = curve.points[i];
        pt.abscissa = m;

        Rng rng({cfg.seed, derive_stream_id(i, 0)});
        const ShotRecord rec = sample_pauli(state_from_coeffs(evolve(step, m, plus)), Axis::X, cfg.shots, rng);
        AxisPoint ax;
        ax.noisy = measured_mean(rec, readout, rng);
        ax.ideal = 1.0;
        if (cfg.deconvolve) {
            const Correction corr = correction_for_repeated(dec, Axis::X, m, tol);
            ax.mitigated = corr.apply(ax.noisy);
            ax.correction = corr.factor;
        } else {
            ax.mitigated = ax.noisy;
        }
        pt.axes[0] = ax;

        if (cfg.comparison) {
            const std::pair<const char *, const Ptm *> alone[] = {{"dephasing_only_x", &dephasing_step},
                                                                  {"damping_only_x", &damping_step}};
            std::uint64_t stream = 3;
            for (const auto &[name, single] : alone) {
                Rng side({cfg.seed, derive_stream_id(i, stream++)});
                const DensityMatrix rho = state_from_coeffs(evolve(*single, m, plus));
                const ShotRecord r = sample_pauli(rho, Axis::X, cfg.shots, side);
                const EstimationResult e = measured_mean(r, readout, side);
                pt.extra.emplace_back(name, e.mean);
                pt.extra.emplace_back(std::string(name) + "_err", e.std_error);
            }
        }
    });
    return curve;
}

Curve run_pauli_sweep(const ExperimentConfig &cfg, const Tolerances &tol) {
    validate(cfg);
    const NoiseModel model = GeneralPauli{cfg.px, cfg.py, cfg.pz};
    const std::optional<InverseMap> inv =
        cfg.deconvolve ? std::optional<InverseMap>(inverse_of(model, tol)) : std::nullopt;
    const std::optional<AssignmentMatrix> readout = readout_of(cfg);
    const std::size_t n = static_cast<std::size_t>(cfg.thetas);

    Curve curve{"theta", std::vector<CurvePoint>(n)};
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        const double theta = n > 1 ? 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        CurvePoint &pt = curve.points[i];
        pt.abscissa = theta;
        const DensityMatrix state = DensityMatrix::pure(std::cos(0.5 * theta), std::sin(0.5 * theta));
        const std::array<double, 3> ideal = {std::sin(theta), 0.0, std::cos(theta)};

        for (Axis a : kAxes) {
            const auto k = static_cast<std::size_t>(a);
            Rng rng({cfg.seed, derive_stream_id(i, k)});
            const ShotRecord rec = sample_pauli_with_pauli_errors(state, a, cfg.shots, cfg.px, cfg.py, cfg.pz, rng);
            AxisPoint ax;
            ax.noisy = measured_mean(rec, readout, rng);
            ax.ideal = ideal[k];
            if (inv) {
                const Correction corr = correction_for(*inv, a);
                ax.mitigated = corr.apply(ax.noisy);
                ax.correction = corr.factor;
            } else {
                ax.mitigated = ax.noisy;
            }
            pt.axes[k] = ax;
        }
    });
    return curve;
}

void write_csv(std::ostream &out, const Curve &curve, const json &config) {
    out << "# " << config.dump() << "\n";
    if (curve.points.empty()) return;
    const CurvePoint &first = curve.points.front();
    std::vector<std::size_t> axes;
    for (std::size_t k = 0; k < 3; ++k)
        if (first.axes[k]) axes.push_back(k);

    out << curve.abscissa_name;
    for (std::size_t k : axes) {
        const char a = axis_name(kAxes[k]);
        out << ",noisy_" << a << ",noisy_" << a << "_err,mitigated_" << a << ",mitigated_" << a << "_err";
    }
    for (std::size_t k : axes) out << ",ideal_" << axis_name(kAxes[k]);
    for (std::size_t k : axes) out << ",c_" << axis_name(kAxes[k]);
    for (const auto &[name, value] : first.extra) out << "," << name;
    out << "\n";

    for (const CurvePoint &pt : curve.points) {
        out << format_double(pt.abscissa);
        for (std::size_t k : axes) {
            const AxisPoint &ax = *pt.axes[k];
            out << "," << format_double(ax.noisy.mean) << "," << format_double(ax.noisy.std_error) << ","
                << format_double(ax.mitigated.mean) << "," << format_double(ax.mitigated.std_error);
        }
        for (std::size_t k : axes) out << "," << format_double(pt.axes[k]->ideal);
        for (std::size_t k : axes) out << "," << format_double(pt.axes[k]->correction);
        for (const auto &[name, value] : pt.extra) out << "," << format_double(value);
        out << "\n";
    }
}

json curve_to_json(const Curve &curve, const json &config) {
    json points = json::array();
    for (const CurvePoint &pt : curve.points) {
        json p;
        p[curve.abscissa_name] = pt.abscissa;
        for (std::size_t k = 0; k < 3; ++k) {
            if (!pt.axes[k]) continue;
            const AxisPoint &ax = *pt.axes[k];
            p[std::string(1, axis_name(kAxes[k]))] = {
                {"noisy", ax.noisy.mean},         {"noisy_err", ax.noisy.std_error},
                {"mitigated", ax.mitigated.mean}, {"mitigated_err", ax.mitigated.std_error},
                {"ideal", ax.ideal},              {"correction", ax.correction},
                {"n_shots", ax.noisy.n_shots},
            };
        }
        for (const auto &[name, value] : pt.extra) p[name] = value;
        points.push_back(std::move(p));
    }
    return {{"config", config}, {"points", std::move(points)}};
}

//--------------------------------------------------------------------------
// Gate-time refit

GateTimeFit fit_gate_time(std::span<const DecayPoint> data, double t1, double t2) {
    (void)decoherence_from_times(t1, t2, 0.0);

    std::set<int> distinct;
    for (const DecayPoint &d : data) distinct.insert(d.m);
    if (distinct.size() < 3) throw DegenerateFit("need at least 3 points with distinct depths");

    std::size_t nonpositive = 0;
    for (const DecayPoint &d : data)
        if (!(d.mean > 0.0)) ++nonpositive;
    if (2 * nonpositive > data.size()) throw DegenerateFit("most decay means are nonpositive");

    const bool flat =
        std::all_of(data.begin(), data.end(), [&](const DecayPoint &d) { return d.mean == data[0].mean; });
    if (flat && data[0].mean != 1.0) throw DegenerateFit("all decay means are equal");

    std::vector<DecayPoint> used;
    for (const DecayPoint &d : data)
        if (d.m > 0 && d.mean > 0.0) used.push_back(d);
    if (used.size() < 2) throw DegenerateFit("fewer than 2 usable points with m > 0");

    const bool weighted = std::all_of(used.begin(), used.end(), [](const DecayPoint &d) { return d.std_error > 0.0; });
    double sxx = 0.0, sxy = 0.0;
    for (const DecayPoint &d : used) {
        const double w = weighted ? (d.mean / d.std_error) * (d.mean / d.std_error) : 1.0;
        const double x = -static_cast<double>(d.m) / t2;
        const double y = std::log(d.mean);
        sxx += w * x * x;
        sxy += w * x * y;
    }
    GateTimeFit fit;
    fit.t = sxy / sxx;
    fit.points_used = used.size();
    for (const DecayPoint &d : used) {
        const double w = weighted ? (d.mean / d.std_error) * (d.mean / d.std_error) : 1.0;
        const double r = std::log(d.mean) + static_cast<double>(d.m) / t2 * fit.t;
        fit.residual += w * r * r;
    }
    fit.t_std_error = weighted ? 1.0 / std::sqrt(sxx)
                               : std::sqrt(fit.residual / static_cast<double>(used.size() - 1) / sxx);
    return fit;
}

std::vector<DecayPoint> read_decay_csv(std::istream &in) {
    std::string line;
    std::vector<std::string> header;
    std::vector<DecayPoint> out;
    auto split = [](const std::string &s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    std::size_t mean_col = 0, err_col = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = split(line);
            auto find = [&](const std::string &name) {
                const auto it = std::find(header.begin(), header.end(), name);
                if (it == header.end()) throw ConfigError("decay CSV has no column '" + name + "'");
                return static_cast<std::size_t>(it - header.begin());
            };
            mean_col = find("noisy_x");
            err_col = find("noisy_x_err");
            continue;
        }
        const std::vector<std::string> cells = split(line);
        if (cells.size() < header.size()) throw ConfigError("decay CSV row is short: " + line);
        try {
            out.push_back({static_cast<int>(std::lround(std::stod(cells[0]))), std::stod(cells[mean_col]),
                           std::stod(cells[err_col])});
        } catch (const std::exception &) {
            throw ConfigError("decay CSV row is not numeric: " + line);
        }
    }
    if (header.empty()) throw ConfigError("decay CSV has no header row");
    return out;
}

//--------------------------------------------------------------------------
// Reports and counts

NoiseModel noise_model_from_json(const json &j) {
    if (!j.is_object() || !j.contains("model")) throw ConfigError("noise model needs a 'model' field");
    const std::string kind = j.at("model").get<std::string>();
    auto num = [&](const char *key) {
        if (!j.contains(key) || !j.at(key).is_number()) {
            throw ConfigError("model '" + kind + "' needs numeric field '" + key + "'");
        }
        return j.at(key).get<double>();
    };
    NoiseModel model;
    if (kind == "bitflip") {
        model = BitFlip{num("p")};
    } else if (kind == "phaseflip") {
        model = PhaseFlip{num("p")};
    } else if (kind == "bitphaseflip") {
        model = BitPhaseFlip{num("p")};
    } else if (kind == "depolarizing") {
        model = Depolarizing{num("p")};
    } else if (kind == "pauli") {
        model = GeneralPauli{num("px"), num("py"), num("pz")};
    } else if (kind == "ad") {
        model = AmplitudeDamping{num("gamma")};
    } else if (kind == "twokraus") {
        model = TwoKraus{num("alpha"), num("beta")};
    } else if (kind == "decoherence") {
        if (j.contains("p") || j.contains("gamma")) {
            model = Decoherence{num("p"), num("gamma")};
        } else {
            try {
                model = decoherence_from_times(num("t1"), num("t2"), num("gate_time"));
            } catch (const ConfigError &) {
                throw;
            } catch (const Error &e) {
                throw ConfigError(std::string("decoherence: ") + e.what());
            }
        }
    } else {
        throw ConfigError("unknown noise model '" + kind + "'");
    }
    try {
        validate(model);
    } catch (const Error &e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return model;
}

json noise_model_to_json(const NoiseModel &model) {
    json j{{"model", kind_name(model)}};
    std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GeneralPauli>) {
                j["px"] = m.px;
                j["py"] = m.py;
                j["pz"] = m.pz;
            } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
                j["gamma"] = m.gamma;
            } else if constexpr (std::is_same_v<T, TwoKraus>) {
                j["alpha"] = m.alpha;
                j["beta"] = m.beta;
            } else if constexpr (std::is_same_v<T, Decoherence>) {
                j["p"] = m.p;
                j["gamma"] = m.gamma;
            } else {
                j["p"] = m.p;
            }
        },
        model);
    return j;
}

json kraus_to_json(const SignedKrausMap &map) {
    json terms = json::array();
    for (const KrausTerm &t : map.terms()) {
        json op = json::array();
        for (std::size_t r = 0; r < 2; ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < 2; ++c) row.push_back({t.op(r, c).real(), t.op(r, c).imag()});
            op.push_back(row);
        }
        terms.push_back({{"weight", t.weight}, {"op", op}});
    }
    return terms;
}

json ptm_to_json(const Ptm &ptm) {
    json rows = json::array();
    for (std::size_t r = 0; r < 4; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < 4; ++c) row.push_back(ptm(r, c));
        rows.push_back(row);
    }
    return rows;
}

json channel_report(const NoiseModel &model, const Tolerances &tol) {
    const SignedKrausMap direct = kraus_of(model);
    json report;
    report["model"] = noise_model_to_json(model);
    report["description"] = describe(model);
    report["kraus"] = kraus_to_json(direct);
    report["ptm"] = ptm_to_json(ptm_of(direct));
    report["completely_positive"] = is_completely_positive(direct, tol);
    report["trace_preserving"] = is_trace_preserving(direct, tol);
    report["unital"] = is_unital(direct, tol);
    report["min_choi_eigenvalue"] = min_choi_eigenvalue(direct);
    try {
        const InverseMap inv = inverse_of(model, tol);
        const InverseReport check = verify_inverse(model, inv, tol);
        report["invertible"] = true;
        report["inverse"] = {
            {"kraus", kraus_to_json(inv.kraus)},
            {"ptm", ptm_to_json(inv.ptm)},
            {"completely_positive", check.inverse_cp},
            {"trace_preserving", is_trace_preserving(inv.kraus, tol)},
            {"min_choi_eigenvalue", check.inverse_min_choi},
            {"max_deviation", check.max_deviation},
        };
        json corr;
        for (Axis a : kAxes) {
            const Correction c = correction_for(inv, a);
            corr[std::string(1, axis_name(a))] = {{"factor", c.factor}, {"offset", c.offset}};
        }
        report["corrections"] = corr;
    } catch (const NonInvertible &e) {
        report["invertible"] = false;
        report["reason"] = e.reason;
    }
    return report;
}

CountsInput parse_counts(const json &j) {
    CountsInput input;
    const json *records = &j;
    if (j.is_object()) {
        if (!j.contains("records")) throw ConfigError("counts document needs a 'records' array");
        records = &j.at("records");
        if (j.contains("assignment_matrix") && !j.at("assignment_matrix").is_null()) {
            const json &a = j.at("assignment_matrix");
            if (!a.is_array() || a.size() != 4) throw ConfigError("assignment_matrix must hold 4 numbers");
            try {
                input.assignment = AssignmentMatrix(a[0].get<double>(), a[1].get<double>(), a[2].get<double>(),
                                                    a[3].get<double>());
            } catch (const InvalidParameter &e) {
                throw ConfigError(std::string("assignment_matrix: ") + e.what());
            }
        }
    }
    if (!records->is_array()) throw ConfigError("counts records must be a JSON array");
    for (std::size_t i = 0; i < records->size(); ++i) {
        const json &r = (*records)[i];
        const std::string where = "records[" + std::to_string(i) + "]";
        try {
            auto count_ok = [](const json &v) { return v.is_number_integer() && v.get<long long>() >= 0; };
            if (!count_ok(r.at("n0")) || !count_ok(r.at("n1"))) {
                throw ConfigError(where + ": counts must be nonnegative integers");
            }
            const auto n0 = r.at("n0").get<std::size_t>();
            const auto n1 = r.at("n1").get<std::size_t>();
            input.records.push_back({n0 + n1, n0, n1, parse_axis(r.at("basis").get<std::string>())});
        } catch (const json::exception &e) {
            throw ConfigError(where + ": " + e.what());
        } catch (const InvalidParameter &e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    return input;
}

std::vector<CountsResult> mitigate_counts(const CountsInput &input, const std::optional<NoiseModel> &model, int depth,
                                          const Tolerances &tol) {
    if (depth < 1) throw ConfigError("depth: must be at least 1");
    const Decoherence *dec = model ? std::get_if<Decoherence>(&*model) : nullptr;
    if (depth > 1 && dec == nullptr) throw ConfigError("depth: repeated deconvolution needs decoherence noise");
    std::optional<InverseMap> inv;
    if (model && depth == 1) inv = inverse_of(*model, tol);

    std::vector<CountsResult> out;
    for (const ShotRecord &rec : input.records) {
        CountsResult r{rec.basis, mean_from_counts(rec), {}, false, {}};
        r.readout_mitigated = input.assignment ? readout_mitigated_mean(rec, *input.assignment, &r.clipped) : r.raw;
        if (inv) {
            r.mitigated = correction_for(*inv, rec.basis).apply(r.readout_mitigated);
        } else if (dec != nullptr) {
            r.mitigated = correction_for_repeated(*dec, rec.basis, depth, tol).apply(r.readout_mitigated);
        } else {
            r.mitigated = r.readout_mitigated;
        }
        out.push_back(r);
    }
    return out;
}

json counts_result_to_json(const std::vector<CountsResult> &results) {
    json arr = json::array();
    auto est = [](const EstimationResult &e) {
        return json{{"mean", e.mean}, {"std_error", e.std_error}, {"n_shots", e.n_shots}, {"correction", e.correction}};
    };
    for (const CountsResult &r : results) {
        arr.push_back({{"basis", std::string(1, axis_name(r.basis))},
                       {"raw", est(r.raw)},
                       {"readout_mitigated", est(r.readout_mitigated)},
                       {"clipped", r.clipped},
                       {"mitigated", est(r.mitigated)}});
    }
    return arr;
}

}  // namespace qdeconv
