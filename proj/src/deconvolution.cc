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

#include "qdeconv/deconvolution.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qdeconv/errors.h"

namespace qdeconv {

EstimationResult Correction::apply(const EstimationResult &noisy) const {
    return {apply(noisy.mean), std::abs(factor) * noisy.std_error, noisy.n_shots, factor};
}

QuorumEstimator quorum_estimator(const Op2 &obs, Axis axis, const Tolerances &tol) {
    if (!obs.is_hermitian(tol.exact)) throw NotHermitian("quorum_estimator: observable is not Hermitian");
    const Op2 &sigma = Op2::pauli(axis);
    const double weight = 1.5 * expectation(obs, sigma).real();
    const double trace_part = 0.5 * obs.trace().real();
    return {axis, weight * sigma + trace_part * Op2::identity()};
}

Correction correction_for(const InverseMap &inv, Axis axis) {
    switch (axis) {
        case Axis::X:
            return {inv.correction.fx, 0.0};
        case Axis::Y:
            return {inv.correction.fy, 0.0};
        case Axis::Z:
            return {inv.correction.fz, inv.correction.z_offset};
    }
    return {};
}

Correction correction_for(const NoiseModel &model, Axis axis, const Tolerances &tol) {
    return correction_for(inverse_of(model, tol), axis);
}

Correction correction_for_repeated(const Decoherence &model, Axis axis, int m, const Tolerances &tol) {
    validate(model);
    if (m < 0) throw InvalidParameter("repetition count must be nonnegative");
    if (m == 0) return {};
    const double keep = 1.0 - model.gamma;
    const double contraction = (1.0 - 2.0 * model.p) * std::sqrt(keep);
    if (contraction == 0.0 || keep == 0.0) {
        throw NonInvertible(describe(model), "repeated decoherence channel is singular");
    }
    const double keep_m = std::pow(keep, m);
    const double factor = axis == Axis::Z ? 1.0 / keep_m : 1.0 / std::pow(contraction, m);
    if (!std::isfinite(factor) || std::abs(factor) > tol.correction_cap) {
        std::ostringstream msg;
        msg << "correction factor " << factor << " at depth " << m << " exceeds cap " << tol.correction_cap;
        throw CorrectionOverflow(msg.str(), factor);
    }
    if (axis == Axis::Z) return {factor, keep_m - 1.0};
    return {factor, 0.0};
}

EstimationResult deconvolve_observable(const Op2 &obs, const PauliMeans &noisy, const InverseMap &inv,
                                       const Tolerances &tol) {
    if (!obs.is_hermitian(tol.exact)) throw NotHermitian("deconvolve_observable: observable is not Hermitian");
    const PauliCoeffs c = pauli_decompose(obs);

    EstimationResult out{c.c0.real(), 0.0, 0, 1.0};
    double variance = 0.0;
    double weight_sq = 0.0;
    double weighted_factor_sq = 0.0;
    int contributing = 0;
    double single_factor = 1.0;
    for (Axis a : kAxes) {
        const double w = c[static_cast<int>(a) + 1].real();
        if (w == 0.0) continue;
        const Correction corr = correction_for(inv, a);
        const EstimationResult &m = noisy[static_cast<std::size_t>(a)];
        out.mean += w * corr.apply(m.mean);
        const double scaled = std::abs(w * corr.factor) * m.std_error;
        variance += scaled * scaled;
        weight_sq += w * w;
        weighted_factor_sq += w * w * corr.factor * corr.factor;
        out.n_shots += m.n_shots;
        ++contributing;
        single_factor = corr.factor;
    }
    out.std_error = std::sqrt(variance);
    if (contributing == 1) {
        out.correction = single_factor;
    } else if (contributing > 1) {
        out.correction = std::sqrt(weighted_factor_sq / weight_sq);
    }
    return out;
}

PauliString::PauliString(const std::string &letters) : letters_(letters) {
    if (letters_.empty()) throw InvalidParameter("Pauli string must have at least one letter");
    for (char &ch : letters_) {
        if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
        if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
            throw InvalidParameter("invalid Pauli letter in '" + letters + "'");
        }
    }
}

EstimationResult deconvolve_pauli_string(const PauliString &letters, const EstimationResult &noisy_mean,
                                         std::span<const NoiseModel> per_qubit_models, const Tolerances &tol) {
    if (per_qubit_models.size() != letters.size()) {
        throw InvalidParameter("Pauli string length does not match the number of per-qubit models");
    }
    double factor = 1.0;
    for (std::size_t q = 0; q < letters.size(); ++q) {
        if (letters[q] == 'I') continue;
        const NoiseModel &model = per_qubit_models[q];
        const InverseMap inv = inverse_of(model, tol);
        if (!inv.ptm.is_unital(tol.exact)) {
            throw NonUnitalUnsupported("Pauli-string deconvolution needs unital noise; qubit " +
                                       std::to_string(q) + " has " + describe(model));
        }
        const Axis axis = letters[q] == 'X' ? Axis::X : (letters[q] == 'Y' ? Axis::Y : Axis::Z);
        factor *= correction_for(inv, axis).factor;
    }
    return Correction{factor, 0.0}.apply(noisy_mean);
}

std::size_t required_shots(double target_std_error, double correction, double noisy_variance_bound) {
    if (!(target_std_error > 0.0)) throw InvalidParameter("target standard error must be positive");
    if (!(noisy_variance_bound >= 0.0)) throw InvalidParameter("variance bound must be nonnegative");
    const double need = correction * correction * noisy_variance_bound;
    const double target_sq = target_std_error * target_std_error;
    // Relative slack absorbs rounding in target^2 so exact ratios land on the integer.
    auto enough = [&](double n) { return need <= target_sq * n * (1.0 + 1e-12); };
    double n = std::max(1.0, std::ceil(need / target_sq));
    if (n > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
        throw InvalidParameter("required shot count overflows");
    }
    while (n > 1.0 && enough(n - 1.0)) n -= 1.0;
    while (!enough(n)) n += 1.0;
    return static_cast<std::size_t>(n);
}

}  // namespace qdeconv
