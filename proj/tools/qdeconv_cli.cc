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

// Command-line front end: channel reports, inverse maps, decay and sweep
// simulations, gate-time refits and counts mitigation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdeconv/errors.h"
#include "qdeconv/experiments.h"
#include "qdeconv/inversion.h"

namespace {

using nlohmann::json;
using namespace qdeconv;

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kNonInvertible = 3, kOverflow = 4 };

/// Raw option storage. Only options the user actually passed override the
/// config file, which in turn overrides the defaults.
struct Flags {
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    double t1 = 0, t2 = 0, gate_time = 0;
    double px = 0, py = 0, pz = 0;
    std::string depths;
    int thetas = 0;
    bool no_deconvolve = false;
    std::string readout_matrix;
    std::string out;
    std::string format = "csv";
    int threads = 0;
    bool comparison = true;

    std::string model;
    double p = 0, gamma = 0, alpha = 0, beta = 0;
    int depth = 1;
    std::string input;
};

template <class T>
std::vector<T> parse_list(const std::string &text, const char *field) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::istringstream cs(cell);
        T v{};
        if (!(cs >> v) || !(cs >> std::ws).eof()) {
            throw ConfigError(std::string(field) + ": cannot parse '" + cell + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError(std::string(field) + ": empty list");
    return out;
}

/// Depth lists accept comma-separated values and start:stop:step ranges.
std::vector<int> parse_depths(const std::string &text) {
    if (text.find(':') == std::string::npos) return parse_list<int>(text, "depths");
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ':')) parts.push_back(parse_list<int>(cell, "depths").at(0));
    if (parts.size() != 3 || parts[2] <= 0) throw ConfigError("depths: range must be start:stop:step with step > 0");
    std::vector<int> out;
    for (int m = parts[0]; m <= parts[1]; m += parts[2]) out.push_back(m);
    return out;
}

std::array<double, 4> parse_readout(const std::string &text) {
    const std::vector<double> v = parse_list<double>(text, "readout-matrix");
    if (v.size() != 4) throw ConfigError("readout-matrix: need exactly 4 numbers a00,a01,a10,a11");
    return {v[0], v[1], v[2], v[3]};
}

json load_config_file(const std::string &path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    try {
        json j = json::parse(in, nullptr, true, true);
        if (!j.is_object()) throw ConfigError("config: top level must be an object");
        return j;
    } catch (const json::parse_error &e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
}

/// Whether the option exists on this subcommand and was passed.
bool given(const CLI::App &app, const std::string &name) {
    const CLI::Option *opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

template <class T>
T file_value(const json &file, const char *key) {
    try {
        return file.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: field '") + key + "': " + e.what());
    }
}

void check_known_keys(const json &file) {
    static const std::vector<std::string> known = {
        "experiment", "t1",          "t2",      "gate_time", "depths",  "comparison", "px",
        "py",         "pz",          "thetas",  "shots",     "seed",    "deconvolve", "readout_matrix",
        "threads",    "noise_model", "depth",   "format"};
    for (const auto &[key, value] : file.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config: unknown field '" + key + "'");
        }
    }
}

ExperimentConfig resolve_experiment(ExperimentKind kind, const Flags &f, const CLI::App &app) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    if (kind == ExperimentKind::PauliSweep) cfg.shots = 1024;

    const json file = load_config_file(f.config_path);
    check_known_keys(file);
    if (file.contains("t1")) cfg.t1 = file_value<double>(file, "t1");
    if (file.contains("t2")) cfg.t2 = file_value<double>(file, "t2");
    if (file.contains("gate_time")) cfg.gate_time = file_value<double>(file, "gate_time");
    if (file.contains("depths")) cfg.depths = file_value<std::vector<int>>(file, "depths");
    if (file.contains("comparison")) cfg.comparison = file_value<bool>(file, "comparison");
    if (file.contains("px")) cfg.px = file_value<double>(file, "px");
    if (file.contains("py")) cfg.py = file_value<double>(file, "py");
    if (file.contains("pz")) cfg.pz = file_value<double>(file, "pz");
    if (file.contains("thetas")) cfg.thetas = file_value<int>(file, "thetas");
    if (file.contains("shots")) cfg.shots = file_value<std::size_t>(file, "shots");
    if (file.contains("seed")) cfg.seed = file_value<std::uint64_t>(file, "seed");
    if (file.contains("deconvolve")) cfg.deconvolve = file_value<bool>(file, "deconvolve");
    if (file.contains("threads")) cfg.threads = file_value<int>(file, "threads");
    if (file.contains("readout_matrix") && !file.at("readout_matrix").is_null()) {
        cfg.readout_matrix = file_value<std::array<double, 4>>(file, "readout_matrix");
    }

    if (given(app, "--t1")) cfg.t1 = f.t1;
    if (given(app, "--t2")) cfg.t2 = f.t2;
    if (given(app, "--gate-time")) cfg.gate_time = f.gate_time;
    if (given(app, "--depths")) cfg.depths = parse_depths(f.depths);
    if (given(app, "--comparison")) cfg.comparison = f.comparison;
    if (given(app, "--px")) cfg.px = f.px;
    if (given(app, "--py")) cfg.py = f.py;
    if (given(app, "--pz")) cfg.pz = f.pz;
    if (given(app, "--thetas")) cfg.thetas = f.thetas;
    if (given(app, "--shots")) cfg.shots = f.shots;
    if (given(app, "--seed")) cfg.seed = f.seed;
    if (given(app, "--no-deconvolve")) cfg.deconvolve = false;
    if (given(app, "--threads")) cfg.threads = f.threads;
    if (given(app, "--readout-matrix")) cfg.readout_matrix = parse_readout(f.readout_matrix);

    validate(cfg);
    return cfg;
}

/// Model from --model and its parameter flags, else from the config file's
/// "noise_model" object.
std::optional<NoiseModel> resolve_model(const Flags &f, const CLI::App &app) {
    json spec;
    if (!f.model.empty()) {
        spec["model"] = f.model;
        auto put = [&](const char *flag, const char *key, double v) {
            if (given(app, flag)) spec[key] = v;
        };
        put("--p", "p", f.p);
        put("--gamma", "gamma", f.gamma);
        put("--alpha", "alpha", f.alpha);
        put("--beta", "beta", f.beta);
        put("--px", "px", f.px);
        put("--py", "py", f.py);
        put("--pz", "pz", f.pz);
        put("--t1", "t1", f.t1);
        put("--t2", "t2", f.t2);
        put("--gate-time", "gate_time", f.gate_time);
    } else {
        const json file = load_config_file(f.config_path);
        check_known_keys(file);
        if (!file.contains("noise_model")) return std::nullopt;
        spec = file.at("noise_model");
    }
    return noise_model_from_json(spec);
}

/// Writes to --out when given, else stdout.
template <class Fn>
void emit(const std::string &path, Fn &&write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("out: cannot open '" + path + "' for writing");
    write(out);
}

void emit_curve(const Flags &f, const Curve &curve, const ExperimentConfig &cfg) {
    const json config = to_json(cfg);
    emit(f.out, [&](std::ostream &os) {
        if (f.format == "json") {
            os << curve_to_json(curve, config).dump(2) << "\n";
        } else {
            write_csv(os, curve, config);
        }
    });
}

void add_experiment_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--seed", f.seed, "RNG seed");
    cmd->add_option("--shots", f.shots, "shots per basis and point");
    cmd->add_flag("--no-deconvolve", f.no_deconvolve, "emit noisy values only");
    cmd->add_option("--readout-matrix", f.readout_matrix, "assignment matrix a00,a01,a10,a11");
    cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

void add_output_flags(CLI::App *cmd, Flags &f, bool csv) {
    cmd->add_option("--out", f.out, "output path (default stdout)");
    if (csv) cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_model_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--model", f.model,
                    "bitflip|phaseflip|bitphaseflip|depolarizing|pauli|ad|twokraus|decoherence");
    cmd->add_option("--p", f.p, "flip, depolarizing or dephasing probability");
    cmd->add_option("--gamma", f.gamma, "amplitude-damping probability");
    cmd->add_option("--alpha", f.alpha, "two-Kraus alpha");
    cmd->add_option("--beta", f.beta, "two-Kraus beta");
    cmd->add_option("--px", f.px, "Pauli x probability");
    cmd->add_option("--py", f.py, "Pauli y probability");
    cmd->add_option("--pz", f.pz, "Pauli z probability");
    cmd->add_option("--t1", f.t1, "T1 in seconds");
    cmd->add_option("--t2", f.t2, "T2 in seconds");
    cmd->add_option("--gate-time", f.gate_time, "gate time in seconds");
}

int run(int argc, char **argv) {
    CLI::App app{"Noise channels, inverse maps and noise deconvolution"};
    app.require_subcommand(1);
    Flags f;

    CLI::App *report = app.add_subcommand("report", "describe a noise channel and its inverse");
    CLI::App *invert = app.add_subcommand("invert", "print the inverse map of a noise channel");
    for (CLI::App *cmd : {report, invert}) {
        cmd->add_option("--config", f.config_path, "JSON config file");
        add_model_flags(cmd, f);
        add_output_flags(cmd, f, false);
    }

    CLI::App *sim = app.add_subcommand("sim", "Monte Carlo experiments");
    sim->require_subcommand(1);
    CLI::App *decay = sim->add_subcommand("decay", "|+> decoherence decay versus depth");
    CLI::App *sweep = sim->add_subcommand("sweep", "R_y(theta) sweep under general Pauli noise");
    for (CLI::App *cmd : {decay, sweep}) {
        cmd->add_option("--config", f.config_path, "JSON config file");
        add_experiment_flags(cmd, f);
        add_output_flags(cmd, f, true);
    }
    decay->add_option("--t1", f.t1, "T1 in seconds");
    decay->add_option("--t2", f.t2, "T2 in seconds");
    decay->add_option("--gate-time", f.gate_time, "gate time in seconds");
    decay->add_option("--depths", f.depths, "comma list or start:stop:step");
    decay->add_option("--comparison", f.comparison, "emit dephasing-only and damping-only columns");
    sweep->add_option("--px", f.px, "Pauli x probability");
    sweep->add_option("--py", f.py, "Pauli y probability");
    sweep->add_option("--pz", f.pz, "Pauli z probability");
    sweep->add_option("--thetas", f.thetas, "number of angles over [0, 2pi]");

    CLI::App *fit = app.add_subcommand("fit", "parameter refits");
    fit->require_subcommand(1);
    CLI::App *gate = fit->add_subcommand("gate-time", "fit the gate time to a decay CSV");
    gate->add_option("--input", f.input, "decay CSV from 'sim decay'")->required();
    gate->add_option("--t1", f.t1, "T1 in seconds")->required();
    gate->add_option("--t2", f.t2, "T2 in seconds")->required();
    add_output_flags(gate, f, false);

    CLI::App *mitigate = app.add_subcommand("mitigate", "post-process measured data");
    mitigate->require_subcommand(1);
    CLI::App *counts = mitigate->add_subcommand("counts", "readout mitigation then deconvolution of counts");
    counts->add_option("--input", f.input, "counts JSON")->required();
    counts->add_option("--config", f.config_path, "JSON config file");
    counts->add_option("--depth", f.depth, "repetitions of a decoherence channel");
    counts->add_option("--readout-matrix", f.readout_matrix, "assignment matrix a00,a01,a10,a11");
    add_model_flags(counts, f);
    add_output_flags(counts, f, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    if (*report || *invert) {
        const CLI::App &cmd = *report ? *report : *invert;
        const std::optional<NoiseModel> model = resolve_model(f, cmd);
        if (!model) throw ConfigError("model: pass --model or a config file with 'noise_model'");
        json out;
        if (*report) {
            out = channel_report(*model);
        } else {
            const InverseMap inv = inverse_of(*model);
            out = {{"model", noise_model_to_json(*model)},
                   {"kraus", kraus_to_json(inv.kraus)},
                   {"ptm", ptm_to_json(inv.ptm)}};
        }
        emit(f.out, [&](std::ostream &os) { os << out.dump(2) << "\n"; });
        return kOk;
    }
    if (*decay || *sweep) {
        const ExperimentKind kind = *decay ? ExperimentKind::DecoherenceDecay : ExperimentKind::PauliSweep;
        const ExperimentConfig cfg = resolve_experiment(kind, f, *decay ? *decay : *sweep);
        const Curve curve = *decay ? run_decoherence_decay(cfg) : run_pauli_sweep(cfg);
        emit_curve(f, curve, cfg);
        return kOk;
    }
    if (*gate) {
        std::ifstream in(f.input);
        if (!in) throw ConfigError("input: cannot open '" + f.input + "'");
        const std::vector<DecayPoint> data = read_decay_csv(in);
        GateTimeFit result;
        try {
            result = fit_gate_time(data, f.t1, f.t2);
        } catch (const InvalidParameter &e) {
            throw ConfigError(std::string("t1/t2: ") + e.what());
        }
        const json out = {{"t", result.t},
                          {"t_std_error", result.t_std_error},
                          {"residual", result.residual},
                          {"points_used", result.points_used}};
        emit(f.out, [&](std::ostream &os) { os << out.dump(2) << "\n"; });
        return kOk;
    }
    if (*counts) {
        std::ifstream in(f.input);
        if (!in) throw ConfigError("input: cannot open '" + f.input + "'");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error &e) {
            throw ConfigError("input: " + f.input + ": " + e.what());
        }
        CountsInput input = parse_counts(doc);
        if (given(*counts, "--readout-matrix")) {
            const auto a = parse_readout(f.readout_matrix);
            try {
                input.assignment = AssignmentMatrix(a[0], a[1], a[2], a[3]);
            } catch (const InvalidParameter &e) {
                throw ConfigError(std::string("readout-matrix: ") + e.what());
            }
        }
        const std::optional<NoiseModel> model = resolve_model(f, *counts);
        const json out = counts_result_to_json(mitigate_counts(input, model, f.depth));
        emit(f.out, [&](std::ostream &os) { os << out.dump(2) << "\n"; });
        return kOk;
    }
    return kOther;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const qdeconv::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const qdeconv::NonInvertible &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonInvertible;
    } catch (const qdeconv::CorrectionOverflow &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOverflow;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
}
