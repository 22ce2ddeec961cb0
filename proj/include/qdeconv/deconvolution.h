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

#ifndef QDECONV_DECONVOLUTION_H
#define QDECONV_DECONVOLUTION_H

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdeconv/channels.h"
#include "qdeconv/inversion.h"
#include "qdeconv/operator_algebra.h"

namespace qdeconv {

/// An estimated expectation value. `correction` is the multiplicative factor
/// applied by mitigation (1 when unmitigated).
struct EstimationResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_shots = 0;
    double correction = 1.0;
};

/// Noisy (or ideal) Pauli means indexed by Axis.
using PauliMeans = std::array<EstimationResult, 3>;

/// E[O](sigma_a) = (3/2) Tr[O sigma_a] sigma_a + (Tr[O]/2) I. Averaging the
/// three expectations with weight 1/3 reconstructs <O>.
struct QuorumEstimator {
    Axis axis;
    Op2 op;
};

QuorumEstimator quorum_estimator(const Op2 &obs, Axis axis, const Tolerances &tol = {});

/// mitigated = factor * (noisy + offset)
struct Correction {
    double factor = 1.0;
    double offset = 0.0;

    double apply(double noisy) const { return factor * (noisy + offset); }
    /// Shifts the mean and scales the standard error by |factor|.
    EstimationResult apply(const EstimationResult &noisy) const;
};

Correction correction_for(const NoiseModel &model, Axis axis, const Tolerances &tol = {});
Correction correction_for(const InverseMap &inv, Axis axis);

/// Correction after m consecutive applications of the decoherence channel.
/// Throws CorrectionOverflow when the factor exceeds tol.correction_cap.
Correction correction_for_repeated(const Decoherence &model, Axis axis, int m, const Tolerances &tol = {});

/// <O> = Tr[O]/2 + (1/2) sum_a Tr[O sigma_a] <N^-1^(sigma_a)>_noisy, with the
/// per-axis terms taken from the inverse map's closed-form corrections.
/// Standard errors combine in quadrature (independent per-axis batches).
EstimationResult deconvolve_observable(const Op2 &obs, const PauliMeans &noisy, const InverseMap &inv,
                                       const Tolerances &tol = {});

class PauliString {
public:
    /// Letters from {I, X, Y, Z}; throws InvalidParameter when empty or malformed.
    explicit PauliString(const std::string &letters);

    std::size_t size() const { return letters_.size(); }
    char operator[](std::size_t i) const { return letters_[i]; }
    const std::string &str() const { return letters_; }

private:
    std::string letters_;
};

/// Deconvolves a Pauli-string mean under independent unital per-qubit noise.
/// Throws NonUnitalUnsupported for non-unital constituents.
EstimationResult deconvolve_pauli_string(const PauliString &letters, const EstimationResult &noisy_mean,
                                         std::span<const NoiseModel> per_qubit_models,
                                         const Tolerances &tol = {});

/// Smallest n with |c| sqrt(variance_bound / n) <= target_std_error.
std::size_t required_shots(double target_std_error, double correction, double noisy_variance_bound = 1.0);

}  // namespace qdeconv

#endif  // QDECONV_DECONVOLUTION_H
