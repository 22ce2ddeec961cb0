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

#include "qdeconv/shot_engine.h"

#include <algorithm>
#include <cmath>

#include "qdeconv/errors.h"

namespace qdeconv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream_id(std::uint64_t sweep_index, std::uint64_t basis, std::uint64_t repetition) {
    std::uint64_t h = splitmix64(sweep_index);
    h = splitmix64(h ^ (basis + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ (repetition + 0x85157af5ULL));
    return h;
}

Rng::Rng(const RngSpec &spec) {
    const std::uint64_t a = splitmix64(spec.seed);
    const std::uint64_t b = splitmix64(a ^ spec.stream_id);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
}

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

std::size_t Rng::binomial(std::size_t n, double p) {
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    std::binomial_distribution<std::size_t> dist(n, p);
    return dist(engine_);
}

ShotRecord sample_pauli(const DensityMatrix &state, Axis basis, std::size_t n_shots, Rng &rng) {
    if (n_shots < 1) throw InvalidParameter("sample_pauli needs at least one shot");
    const double mean = expectation(Op2::pauli(basis), state).real();
    const double p0 = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
    const std::size_t n0 = rng.binomial(n_shots, p0);
    return {n_shots, n0, n_shots - n0, basis};
}

ShotRecord sample_pauli(const DensityMatrix &state, Axis basis, std::size_t n_shots, const RngSpec &spec) {
    Rng rng(spec);
    return sample_pauli(state, basis, n_shots, rng);
}

EstimationResult mean_from_counts(const ShotRecord &rec) {
    if (rec.n_shots < 2) throw InvalidParameter("mean_from_counts needs at least two shots");
    if (rec.n0 + rec.n1 != rec.n_shots) throw InvalidParameter("shot counts do not sum to n_shots");
    const double n = static_cast<double>(rec.n_shots);
    const double mean = (static_cast<double>(rec.n0) - static_cast<double>(rec.n1)) / n;
    const double var = std::max(0.0, 1.0 - mean * mean) / (n - 1.0);
    return {mean, std::sqrt(var), rec.n_shots, 1.0};
}

DensityMatrix inject_pauli_error(const DensityMatrix &state, double px, double py, double pz, Rng &rng) {
    for (double p : {px, py, pz})
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("Pauli error probabilities must lie in [0, 1]");
    if (px + py + pz > 1.0 + 1e-12) throw InvalidParameter("Pauli error probabilities sum above 1");
    const double u = rng.uniform();
    int which = 0;
    if (u < px) {
        which = 1;
    } else if (u < px + py) {
        which = 2;
    } else if (u < px + py + pz) {
        which = 3;
    }
    if (which == 0) return state;
    const Op2 &s = Op2::pauli(which);
    return DensityMatrix::unchecked(s * state.op() * s);
}

ShotRecord sample_pauli_with_pauli_errors(const DensityMatrix &state, Axis basis, std::size_t n_shots, double px,
                                          double py, double pz, Rng &rng) {
    if (n_shots < 1) throw InvalidParameter("sample_pauli needs at least one shot");
    for (double p : {px, py, pz})
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("Pauli error probabilities must lie in [0, 1]");
    if (px + py + pz > 1.0 + 1e-12) throw InvalidParameter("Pauli error probabilities sum above 1");

    const std::array<double, 4> probs = {std::max(0.0, 1.0 - px - py - pz), px, py, pz};
    ShotRecord total{n_shots, 0, 0, basis};
    std::size_t remaining = n_shots;
    double mass_left = 1.0;
    for (int k = 0; k < 4 && remaining > 0; ++k) {
        std::size_t group = remaining;
        if (k < 3) {
            const double q = mass_left > 0.0 ? std::clamp(probs[k] / mass_left, 0.0, 1.0) : 1.0;
            group = rng.binomial(remaining, q);
        }
        mass_left -= probs[k];
        remaining -= group;
        if (group == 0) continue;
        const Op2 &s = Op2::pauli(k);
        const DensityMatrix flipped = k == 0 ? state : DensityMatrix::unchecked(s * state.op() * s);
        const ShotRecord part = sample_pauli(flipped, basis, group, rng);
        total.n0 += part.n0;
        total.n1 += part.n1;
    }
    return total;
}

AssignmentMatrix::AssignmentMatrix(double a00, double a01, double a10, double a11) : a_{a00, a01, a10, a11} {
    for (double v : a_)
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidParameter("assignment matrix entries must lie in [0, 1]");
    if (std::abs(a00 + a10 - 1.0) > 1e-12 || std::abs(a01 + a11 - 1.0) > 1e-12) {
        throw InvalidParameter("assignment matrix columns must sum to 1");
    }
}

std::array<double, 2> AssignmentMatrix::apply(const std::array<double, 2> &p) const {
    return {a_[0] * p[0] + a_[1] * p[1], a_[2] * p[0] + a_[3] * p[1]};
}

ShotRecord apply_readout_error(const ShotRecord &rec, const AssignmentMatrix &a, Rng &rng) {
    // Each true-0 shot reads 0 with probability A(0,0); each true-1 shot with A(0,1).
    const std::size_t zeros_kept = rng.binomial(rec.n0, a(0, 0));
    const std::size_t ones_flipped = rng.binomial(rec.n1, a(0, 1));
    const std::size_t n0 = zeros_kept + ones_flipped;
    return {rec.n_shots, n0, rec.n_shots - n0, rec.basis};
}

MitigatedFrequencies mitigate_readout(const std::array<double, 2> &freqs, const AssignmentMatrix &a) {
    const double det = a.determinant();
    if (!(std::abs(det) > 1e-6)) throw SingularAssignment("assignment matrix is singular");
    MitigatedFrequencies out;
    out.p = {(a(1, 1) * freqs[0] - a(0, 1) * freqs[1]) / det, (-a(1, 0) * freqs[0] + a(0, 0) * freqs[1]) / det};
    if (out.p[0] < 0.0 || out.p[1] < 0.0) {
        out.clipped = true;
        out.p[0] = std::max(0.0, out.p[0]);
        out.p[1] = std::max(0.0, out.p[1]);
        const double total = out.p[0] + out.p[1];
        out.p[0] /= total;
        out.p[1] /= total;
    }
    return out;
}

EstimationResult readout_mitigated_mean(const ShotRecord &rec, const AssignmentMatrix &a, bool *clipped) {
    const EstimationResult raw = mean_from_counts(rec);
    const double n = static_cast<double>(rec.n_shots);
    const MitigatedFrequencies m =
        mitigate_readout({static_cast<double>(rec.n0) / n, static_cast<double>(rec.n1) / n}, a);
    if (clipped != nullptr) *clipped = m.clipped;
    return {m.p[0] - m.p[1], raw.std_error / std::abs(a.determinant()), rec.n_shots, 1.0};
}

}  // namespace qdeconv
