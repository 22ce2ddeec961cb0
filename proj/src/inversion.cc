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

#include "qdeconv/inversion.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdeconv/errors.h"

namespace qdeconv {

Ptm invert_ptm(const Ptm &ptm, double det_tol) {
    const double det = ptm.determinant();
    if (!(std::abs(det) > det_tol)) {
        std::ostringstream msg;
        msg << "PTM is singular (det = " << det << ")";
        throw SingularPtm(msg.str(), det);
    }
    // Gauss-Jordan on [A | I] with partial pivoting.
    std::array<double, 16> a = ptm.entries();
    Ptm inv = Ptm::identity();
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (std::abs(a[4 * r + col]) > std::abs(a[4 * pivot + col])) pivot = r;
        if (pivot != col) {
            for (std::size_t c = 0; c < 4; ++c) {
                std::swap(a[4 * pivot + c], a[4 * col + c]);
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const double d = a[4 * col + col];
        for (std::size_t c = 0; c < 4; ++c) {
            a[4 * col + c] /= d;
            inv(col, c) /= d;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[4 * r + col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < 4; ++c) {
                a[4 * r + c] -= f * a[4 * col + c];
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

SignedKrausMap operator_sum_from_pauli_diagonal(const Ptm &ptm, const Tolerances &tol) {
    if (!ptm.is_diagonal(tol.exact)) throw NotDiagonal("PTM is not diagonal in the Pauli basis");
    if (std::abs(ptm(0, 0) - 1.0) > tol.exact) throw InvalidParameter("PTM must have Gamma_00 = 1");
    const double d0 = ptm(0, 0), d1 = ptm(1, 1), d2 = ptm(2, 2), d3 = ptm(3, 3);
    const double beta[4] = {
        0.25 * (d0 + d1 + d2 + d3),
        0.25 * (d0 + d1 - d2 - d3),
        0.25 * (d0 - d1 + d2 - d3),
        0.25 * (d0 - d1 - d2 + d3),
    };
    std::vector<KrausTerm> terms;
    for (int j = 0; j < 4; ++j) terms.push_back({beta[j], Op2::pauli(j)});
    return SignedKrausMap::pruned(terms, "pauli_diagonal");
}

SignedKrausMap adjoint(const SignedKrausMap &map) {
    std::vector<KrausTerm> terms;
    terms.reserve(map.size());
    for (const KrausTerm &t : map.terms()) terms.push_back({t.weight, t.op.dagger()});
    return SignedKrausMap(std::move(terms), map.label().empty() ? std::string{} : map.label() + "^adj");
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_nonsingular(double value, double tol, const NoiseModel &model, const char *why) {
    if (!(std::abs(value) > tol)) throw NonInvertible(describe(model), why);
}

/// Inverse of a single-axis flip about `axis` (1 = x, 2 = y, 3 = z).
InverseMap flip_inverse(const NoiseModel &model, double p, int axis, const Tolerances &tol) {
    const double c = 1.0 - 2.0 * p;
    require_nonsingular(c, tol.singular, model, "p = 1/2 collapses the Bloch sphere onto an axis");
    InverseMap inv{SignedKrausMap::pruned({{(1.0 - p) / c, Op2::identity()}, {-p / c, Op2::pauli(axis)}},
                                          "inverse_" + kind_name(model)),
                   Ptm::diagonal(1.0, 1.0 / c, 1.0 / c, 1.0 / c), model, {}};
    inv.ptm(static_cast<std::size_t>(axis), static_cast<std::size_t>(axis)) = 1.0;
    inv.correction = {axis == 1 ? 1.0 : 1.0 / c, axis == 2 ? 1.0 : 1.0 / c, axis == 3 ? 1.0 : 1.0 / c, 0.0};
    return inv;
}

SignedKrausMap amplitude_damping_inverse_kraus(double gamma) {
    const double kappa = 1.0 / std::sqrt(1.0 - gamma);
    const double tau = std::sqrt(gamma / (1.0 - gamma));
    return SignedKrausMap::pruned({{1.0, Op2{1.0, 0.0, 0.0, kappa}}, {-1.0, Op2{0.0, tau, 0.0, 0.0}}},
                                  "inverse_ad");
}

}  // namespace

InverseMap inverse_of(const NoiseModel &model, const Tolerances &tol) {
    validate(model);
    return std::visit(
        Overloaded{
            [&](const BitFlip &m) { return flip_inverse(model, m.p, 1, tol); },
            [&](const BitPhaseFlip &m) { return flip_inverse(model, m.p, 2, tol); },
            [&](const PhaseFlip &m) { return flip_inverse(model, m.p, 3, tol); },
            [&](const Depolarizing &m) {
                const double c = 1.0 - m.p;
                require_nonsingular(c, tol.singular, model, "p = 1 maps every state to I/2");
                const double b0 = (4.0 - m.p) / (4.0 * c);
                const double bk = -m.p / (4.0 * c);
                SignedKrausMap kraus = SignedKrausMap::pruned({{b0, Op2::identity()},
                                                               {bk, Op2::sigma_x()},
                                                               {bk, Op2::sigma_y()},
                                                               {bk, Op2::sigma_z()}},
                                                              "inverse_depolarizing");
                return InverseMap{std::move(kraus), Ptm::diagonal(1.0, 1.0 / c, 1.0 / c, 1.0 / c), model,
                                  {1.0 / c, 1.0 / c, 1.0 / c, 0.0}};
            },
            [&](const GeneralPauli &m) {
                const double lx = 1.0 - 2.0 * (m.py + m.pz);
                const double ly = 1.0 - 2.0 * (m.px + m.pz);
                const double lz = 1.0 - 2.0 * (m.px + m.py);
                require_nonsingular(lx, tol.singular, model, "1 - 2(py + pz) = 0");
                require_nonsingular(ly, tol.singular, model, "1 - 2(px + pz) = 0");
                require_nonsingular(lz, tol.singular, model, "1 - 2(px + py) = 0");
                const Ptm ptm = Ptm::diagonal(1.0, 1.0 / lx, 1.0 / ly, 1.0 / lz);
                SignedKrausMap solved = operator_sum_from_pauli_diagonal(ptm, tol);
                return InverseMap{SignedKrausMap(solved.terms(), "inverse_pauli"), ptm, model,
                                  {1.0 / lx, 1.0 / ly, 1.0 / lz, 0.0}};
            },
            [&](const AmplitudeDamping &m) {
                const double keep = 1.0 - m.gamma;
                require_nonsingular(keep, tol.singular, model, "gamma = 1 maps every state to |0><0|");
                const double kappa = 1.0 / std::sqrt(keep);
                Ptm ptm = Ptm::diagonal(1.0, kappa, kappa, 1.0 / keep);
                ptm(3, 0) = -m.gamma / keep;
                return InverseMap{amplitude_damping_inverse_kraus(m.gamma), ptm, model,
                                  {kappa, kappa, 1.0 / keep, -m.gamma}};
            },
            [&](const TwoKraus &m) {
                const double c_minus = std::cos(m.alpha - m.beta);
                const double c_plus = std::cos(m.alpha + m.beta);
                require_nonsingular(c_minus, tol.singular, model, "cos(alpha - beta) = 0");
                require_nonsingular(c_plus, tol.singular, model, "cos(alpha + beta) = 0");
                const double ca = std::cos(m.alpha), sa = std::sin(m.alpha);
                const double cb = std::cos(m.beta), sb = std::sin(m.beta);
                const double sum2 = std::cos(2.0 * m.alpha) + std::cos(2.0 * m.beta);
                const double h = 2.0 / sum2;
                // sqrt(h) may be imaginary; keep operators real and move sign(h) into the weights.
                const double root = std::sqrt(std::abs(h));
                const double sign = h > 0.0 ? 1.0 : -1.0;
                SignedKrausMap kraus = SignedKrausMap::pruned(
                    {{sign, root * Op2{cb, 0.0, 0.0, ca}}, {-sign, root * Op2{0.0, sb, sa, 0.0}}},
                    "inverse_twokraus");
                Ptm ptm = Ptm::diagonal(1.0, 1.0 / c_minus, 1.0 / c_plus, h);
                ptm(3, 0) = (std::cos(2.0 * m.beta) - std::cos(2.0 * m.alpha)) / sum2;
                return InverseMap{std::move(kraus), ptm, model,
                                  {1.0 / c_minus, 1.0 / c_plus, h, cb * cb + sa * sa - 1.0}};
            },
            [&](const Decoherence &m) {
                const double c = 1.0 - 2.0 * m.p;
                const double keep = 1.0 - m.gamma;
                require_nonsingular(c, tol.singular, model, "dephasing p = 1/2");
                require_nonsingular(keep, tol.singular, model, "damping gamma = 1");
                const double fxy = 1.0 / (c * std::sqrt(keep));
                // (AD o Z)^-1 = Z^-1 o AD^-1
                const SignedKrausMap dephasing_inv = SignedKrausMap::pruned(
                    {{(1.0 - m.p) / c, Op2::identity()}, {-m.p / c, Op2::sigma_z()}}, "inverse_phaseflip");
                SignedKrausMap kraus = compose(dephasing_inv, amplitude_damping_inverse_kraus(m.gamma));
                Ptm ptm = Ptm::diagonal(1.0, fxy, fxy, 1.0 / keep);
                ptm(3, 0) = -m.gamma / keep;
                return InverseMap{SignedKrausMap(kraus.terms(), "inverse_decoherence"), ptm, model,
                                  {fxy, fxy, 1.0 / keep, -m.gamma}};
            },
        },
        model);
}

InverseReport verify_inverse(const NoiseModel &model, const InverseMap &inv, const Tolerances &tol) {
    const SignedKrausMap direct = kraus_of(model);
    const Ptm product = ptm_of(inv.kraus) * ptm_of(direct);
    InverseReport report{};
    report.max_deviation = max_abs_diff(product, Ptm::identity());
    report.direct_min_choi = min_choi_eigenvalue(direct);
    report.inverse_min_choi = min_choi_eigenvalue(inv.kraus);
    report.direct_cp = report.direct_min_choi >= -tol.positivity;
    report.inverse_cp = report.inverse_min_choi >= -tol.positivity;
    return report;
}

}  // namespace qdeconv
