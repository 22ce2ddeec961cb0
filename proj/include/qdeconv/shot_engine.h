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

#ifndef QDECONV_SHOT_ENGINE_H
#define QDECONV_SHOT_ENGINE_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>

#include "qdeconv/deconvolution.h"
#include "qdeconv/operator_algebra.h"

namespace qdeconv {

/// Identifies one independent random stream. Equal specs give equal sequences.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Stream id for (sweep point, basis, repetition); disjoint for distinct triples
/// with overwhelming probability.
std::uint64_t derive_stream_id(std::uint64_t sweep_index, std::uint64_t basis, std::uint64_t repetition = 0);

/// Per-task generator built from an RngSpec.
class Rng {
public:
    explicit Rng(const RngSpec &spec);

    std::mt19937_64 &engine() { return engine_; }
    double uniform();
    std::size_t binomial(std::size_t n, double p);

private:
    std::mt19937_64 engine_;
};

struct ShotRecord {
    std::size_t n_shots = 0;
    std::size_t n0 = 0;
    std::size_t n1 = 0;
    Axis basis = Axis::Z;
};

/// n_shots projective measurements of sigma_basis; outcome 0 has
/// probability (1 + <sigma_basis>)/2.
ShotRecord sample_pauli(const DensityMatrix &state, Axis basis, std::size_t n_shots, Rng &rng);
ShotRecord sample_pauli(const DensityMatrix &state, Axis basis, std::size_t n_shots, const RngSpec &spec);

/// mean = (n0 - n1)/n, std_error = sqrt((1 - mean^2)/(n - 1)). Requires n >= 2.
EstimationResult mean_from_counts(const ShotRecord &rec);

/// One stochastic Pauli-error trajectory: I with probability 1 - px - py - pz,
/// otherwise sigma rho sigma for the sampled sigma.
DensityMatrix inject_pauli_error(const DensityMatrix &state, double px, double py, double pz, Rng &rng);

/// n_shots measurements where every shot first suffers an independent
/// stochastic Pauli error. Sampled as a multinomial over {I, X, Y, Z}
/// followed by one binomial per resulting state.
ShotRecord sample_pauli_with_pauli_errors(const DensityMatrix &state, Axis basis, std::size_t n_shots, double px,
                                          double py, double pz, Rng &rng);

/// Column-stochastic readout matrix, A(i, j) = P(read i | true j).
class AssignmentMatrix {
public:
    AssignmentMatrix(double a00, double a01, double a10, double a11);
    static AssignmentMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double operator()(std::size_t read, std::size_t truth) const { return a_[2 * read + truth]; }
    double determinant() const { return a_[0] * a_[3] - a_[1] * a_[2]; }
    std::array<double, 2> apply(const std::array<double, 2> &p) const;

private:
    std::array<double, 4> a_;
};

ShotRecord apply_readout_error(const ShotRecord &rec, const AssignmentMatrix &a, Rng &rng);

struct MitigatedFrequencies {
    std::array<double, 2> p{};
    /// Set when A^-1 f left the simplex and was clipped and renormalised.
    bool clipped = false;
};

/// A^-1 f projected back onto the probability simplex. Throws
/// SingularAssignment when |det A| <= 1e-6.
MitigatedFrequencies mitigate_readout(const std::array<double, 2> &freqs, const AssignmentMatrix &a);

/// Readout-mitigated Pauli mean of a record. The standard error of the raw
/// mean is scaled by 1/|det A|.
EstimationResult readout_mitigated_mean(const ShotRecord &rec, const AssignmentMatrix &a, bool *clipped = nullptr);

}  // namespace qdeconv

#endif  // QDECONV_SHOT_ENGINE_H
