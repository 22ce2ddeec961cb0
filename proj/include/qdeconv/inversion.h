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

#ifndef QDECONV_INVERSION_H
#define QDECONV_INVERSION_H

#include "qdeconv/channels.h"
#include "qdeconv/operator_algebra.h"

namespace qdeconv {

/// Per-axis deconvolution data for single Pauli measurements:
///   mitigated_x = fx * noisy_x, mitigated_y = fy * noisy_y,
///   mitigated_z = fz * (noisy_z + z_offset).
struct CorrectionFactors {
    double fx = 1.0;
    double fy = 1.0;
    double fz = 1.0;
    double z_offset = 0.0;
};

/// Exact inverse of a noise model. `kraus` is trace preserving but, except
/// for the noiseless case, not completely positive.
struct InverseMap {
    SignedKrausMap kraus;
    Ptm ptm;
    NoiseModel source;
    CorrectionFactors correction;
};

/// Numeric 4x4 inverse. Throws SingularPtm when |det| <= det_tol.
Ptm invert_ptm(const Ptm &ptm, double det_tol = 1e-12);

/// Closed-form inverse map of a model. Throws NonInvertible at (or within
/// tol.singular of) a singular parameter point.
InverseMap inverse_of(const NoiseModel &model, const Tolerances &tol = {});

/// Solves sum_j beta_j sigma_j . sigma_j for a diagonal PTM with Gamma_00 = 1.
/// Throws NotDiagonal otherwise.
SignedKrausMap operator_sum_from_pauli_diagonal(const Ptm &ptm, const Tolerances &tol = {});

/// Hilbert-Schmidt adjoint: every term (w, A) becomes (w, A^dagger).
SignedKrausMap adjoint(const SignedKrausMap &map);

struct InverseReport {
    /// max |Gamma_inv Gamma - I| over all entries.
    double max_deviation;
    bool direct_cp;
    bool inverse_cp;
    double direct_min_choi;
    double inverse_min_choi;
};

InverseReport verify_inverse(const NoiseModel &model, const InverseMap &inv, const Tolerances &tol = {});

}  // namespace qdeconv

#endif  // QDECONV_INVERSION_H
