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

#ifndef QDECONV_EXPERIMENTS_H
#define QDECONV_EXPERIMENTS_H

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qdeconv/channels.h"
#include "qdeconv/deconvolution.h"
#include "qdeconv/shot_engine.h"

namespace qdeconv {

enum class ExperimentKind { DecoherenceDecay, PauliSweep, ChannelReport };

std::string to_string(ExperimentKind kind);

/// Resolved configuration of one experiment run. Defaults reproduce the
/// qubit-25 decay (T1 = 35.91 us, T2 = 25.11 us, t = 40 ns) and the
/// general-Pauli sweep with p = (0.1, 0.05, 0.2).
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::DecoherenceDecay;

    double t1 = 35.91e-6;
    double t2 = 25.11e-6;
    double gate_time = 40e-9;
    std::vector<int> depths = default_depths();
    /// Emit dephasing-only and damping-only columns next to the decay.
    bool comparison = true;

    double px = 0.1;
    double py = 0.05;
    double pz = 0.2;
    int thetas = 25;

    std::size_t shots = 2048;
    std::uint64_t seed = 0;
    bool deconvolve = true;
    std::optional<std::array<double, 4>> readout_matrix;
    /// 0 picks std::thread::hardware_concurrency().
    int threads = 0;

    static std::vector<int> default_depths();
};

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig &cfg);
nlohmann::json to_json(const ExperimentConfig &cfg);

struct AxisPoint {
    EstimationResult noisy;
    EstimationResult mitigated;
    double ideal = 0.0;
    double correction = 1.0;
};

struct CurvePoint {
    double abscissa = 0.0;
    std::array<std::optional<AxisPoint>, 3> axes;
    /// Additional named columns, e.g. single-channel comparison curves.
    std::vector<std::pair<std::string, double>> extra;
};

struct Curve {
    std::string abscissa_name;
    std::vector<CurvePoint> points;
};

/// |+> left to decohere for m gate times, then measured along x.
Curve run_decoherence_decay(const ExperimentConfig &cfg, const Tolerances &tol = {});

/// R_y(theta)|0> under per-shot general Pauli noise, all three bases.
Curve run_pauli_sweep(const ExperimentConfig &cfg, const Tolerances &tol = {});

/// CSV with a '#'-prefixed JSON header carrying `config`.
void write_csv(std::ostream &out, const Curve &curve, const nlohmann::json &config);
nlohmann::json curve_to_json(const Curve &curve, const nlohmann::json &config);

//--------------------------------------------------------------------------
// Gate-time refit

struct DecayPoint {
    int m = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

struct GateTimeFit {
    double t = 0.0;
    double t_std_error = 0.0;
    double residual = 0.0;
    std::size_t points_used = 0;
};

/// Least-squares fit of log <sigma_x> = -m t / T2 for the gate time t, with
/// T1 and T2 held at their calibration values.
GateTimeFit fit_gate_time(std::span<const DecayPoint> data, double t1, double t2);

/// Reads (abscissa, noisy_x, noisy_x_err) rows from a decay CSV.
std::vector<DecayPoint> read_decay_csv(std::istream &in);

//--------------------------------------------------------------------------
// Reports and counts

NoiseModel noise_model_from_json(const nlohmann::json &j);
nlohmann::json noise_model_to_json(const NoiseModel &model);
nlohmann::json kraus_to_json(const SignedKrausMap &map);
nlohmann::json ptm_to_json(const Ptm &ptm);

/// Kraus terms, PTM, CP/TP/unital flags, inverse map and per-axis corrections.
nlohmann::json channel_report(const NoiseModel &model, const Tolerances &tol = {});

struct CountsInput {
    std::vector<ShotRecord> records;
    std::optional<AssignmentMatrix> assignment;
};

/// Accepts a bare array of {basis, n0, n1} records or an object
/// {"records": [...], "assignment_matrix": [a00, a01, a10, a11]}.
CountsInput parse_counts(const nlohmann::json &j);

struct CountsResult {
    Axis basis;
    EstimationResult raw;
    EstimationResult readout_mitigated;
    bool clipped = false;
    EstimationResult mitigated;
};

/// Readout mitigation (when an assignment matrix is present) followed by
/// deconvolution of `model` (when given). `depth` > 1 is only meaningful for
/// decoherence noise.
std::vector<CountsResult> mitigate_counts(const CountsInput &input, const std::optional<NoiseModel> &model,
                                          int depth = 1, const Tolerances &tol = {});

nlohmann::json counts_result_to_json(const std::vector<CountsResult> &results);

}  // namespace qdeconv

#endif  // QDECONV_EXPERIMENTS_H
