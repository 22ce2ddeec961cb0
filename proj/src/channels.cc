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

#include "qdeconv/channels.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jacobi.h"
#include "qdeconv/errors.h"

namespace qdeconv {

//--------------------------------------------------------------------------
// Ptm

Ptm Ptm::identity() { return diagonal(1, 1, 1, 1); }

Ptm Ptm::diagonal(double d0, double d1, double d2, double d3) {
    Ptm r;
    r(0, 0) = d0;
    r(1, 1) = d1;
    r(2, 2) = d2;
    r(3, 3) = d3;
    return r;
}

double Ptm::determinant() const {
    std::array<double, 16> a = m_;
    double det = 1.0;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (std::abs(a[4 * r + col]) > std::abs(a[4 * pivot + col])) pivot = r;
        if (a[4 * pivot + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < 4; ++c) std::swap(a[4 * pivot + c], a[4 * col + c]);
            det = -det;
        }
        det *= a[4 * col + col];
        for (std::size_t r = col + 1; r < 4; ++r) {
            const double f = a[4 * r + col] / a[4 * col + col];
            for (std::size_t c = col; c < 4; ++c) a[4 * r + c] -= f * a[4 * col + c];
        }
    }
    return det;
}

bool Ptm::is_diagonal(double tol) const {
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (r != c && std::abs((*this)(r, c)) > tol) return false;
    return true;
}

bool Ptm::is_trace_preserving(double tol) const {
    return std::abs(m_[0] - 1.0) <= tol && std::abs(m_[1]) <= tol && std::abs(m_[2]) <= tol &&
           std::abs(m_[3]) <= tol;
}

bool Ptm::is_unital(double tol) const {
    return std::abs(m_[0] - 1.0) <= tol && std::abs(m_[4]) <= tol && std::abs(m_[8]) <= tol &&
           std::abs(m_[12]) <= tol;
}

Ptm operator*(const Ptm &a, const Ptm &b) {
    Ptm r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

double max_abs_diff(const Ptm &a, const Ptm &b) {
    double d = 0.0;
    for (std::size_t k = 0; k < 16; ++k) d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

//--------------------------------------------------------------------------
// SignedKrausMap

SignedKrausMap::SignedKrausMap(std::vector<KrausTerm> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
    for (const KrausTerm &t : terms_) {
        if (!std::isfinite(t.weight) || t.weight == 0.0) {
            throw InvalidParameter("Kraus weights must be finite and nonzero");
        }
    }
}

SignedKrausMap SignedKrausMap::pruned(const std::vector<KrausTerm> &terms, std::string label) {
    std::vector<KrausTerm> kept;
    kept.reserve(terms.size());
    for (const KrausTerm &t : terms)
        if (t.weight != 0.0 && !t.op.is_zero()) kept.push_back(t);
    return SignedKrausMap(std::move(kept), std::move(label));
}

SignedKrausMap SignedKrausMap::identity() { return SignedKrausMap({{1.0, Op2::identity()}}, "identity"); }

SignedKrausMap SignedKrausMap::unitary(const Op2 &u) { return SignedKrausMap({{1.0, u}}, "unitary"); }

Op2 apply(const SignedKrausMap &map, const Op2 &state) {
    Op2 out = Op2::zero();
    for (const KrausTerm &t : map.terms()) out = out + t.weight * (t.op * state * t.op.dagger());
    return out;
}

Ptm ptm_of(const SignedKrausMap &map) {
    Ptm r;
    for (int j = 0; j < 4; ++j) {
        const Op2 image = apply(map, Op2::pauli(j));
        for (int i = 0; i < 4; ++i) {
            r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                0.5 * expectation(Op2::pauli(i), image).real();
        }
    }
    return r;
}

PauliCoeffs apply_ptm(const Ptm &ptm, const PauliCoeffs &coeffs) {
    PauliCoeffs out{};
    for (int i = 0; i < 4; ++i) {
        Complex s{};
        for (int j = 0; j < 4; ++j) s += ptm(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * coeffs[j];
        out[i] = s;
    }
    return out;
}

Ptm compose(const Ptm &outer, const Ptm &inner) { return outer * inner; }

Ptm compose_n(const Ptm &ptm, int m) {
    if (m < 1) throw InvalidParameter("compose_n requires m >= 1");
    Ptm result = Ptm::identity();
    Ptm base = ptm;
    for (unsigned e = static_cast<unsigned>(m); e > 0; e >>= 1) {
        if (e & 1u) result = result * base;
        base = base * base;
    }
    return result;
}

SignedKrausMap compose(const SignedKrausMap &outer, const SignedKrausMap &inner) {
    std::vector<KrausTerm> terms;
    terms.reserve(outer.size() * inner.size());
    for (const KrausTerm &o : outer.terms())
        for (const KrausTerm &i : inner.terms()) terms.push_back({o.weight * i.weight, o.op * i.op});
    std::string label;
    if (!outer.label().empty() || !inner.label().empty()) label = outer.label() + " o " + inner.label();
    return SignedKrausMap::pruned(terms, std::move(label));
}

//--------------------------------------------------------------------------
// Choi

bool ChoiMatrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
}

std::array<double, 4> ChoiMatrix::eigenvalues() const { return detail::hermitian_eigenvalues<4>(m_); }

ChoiMatrix choi_of(const SignedKrausMap &map) {
    std::array<Complex, 16> c{};
    for (const KrausTerm &t : map.terms()) {
        // (A (x) I)|Omega> has component A_ij at index 2i + j.
        const std::array<Complex, 4> &v = t.op.entries();
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t s = 0; s < 4; ++s) c[4 * r + s] += t.weight * v[r] * std::conj(v[s]);
    }
    return ChoiMatrix(c);
}

double min_choi_eigenvalue(const SignedKrausMap &map) { return choi_of(map).eigenvalues()[0]; }

bool is_completely_positive(const SignedKrausMap &map, const Tolerances &tol) {
    return min_choi_eigenvalue(map) >= -tol.positivity;
}

bool is_trace_preserving(const SignedKrausMap &map, const Tolerances &tol) {
    Op2 s = Op2::zero();
    for (const KrausTerm &t : map.terms()) s = s + t.weight * (t.op.dagger() * t.op);
    return max_abs_diff(s, Op2::identity()) <= tol.positivity;
}

bool is_unital(const SignedKrausMap &map, const Tolerances &tol) {
    Op2 s = Op2::zero();
    for (const KrausTerm &t : map.terms()) s = s + t.weight * (t.op * t.op.dagger());
    return max_abs_diff(s, Op2::identity()) <= tol.positivity;
}

//--------------------------------------------------------------------------
// Noise models

namespace {

void check_probability(double p, const char *name) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        std::ostringstream msg;
        msg << name << " = " << p << " is not a probability in [0, 1]";
        throw InvalidParameter(msg.str());
    }
}

void check_angle(double a, const char *name) {
    if (!std::isfinite(a) || a < 0.0 || a >= 2.0 * std::numbers::pi) {
        std::ostringstream msg;
        msg << name << " = " << a << " is outside [0, 2pi)";
        throw InvalidParameter(msg.str());
    }
}

/// Shortest decimal text that round-trips to the same double.
std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

SignedKrausMap flip_kraus(double p, const Op2 &sigma, std::string label) {
    return SignedKrausMap::pruned({{1.0, std::sqrt(1.0 - p) * Op2::identity()}, {1.0, std::sqrt(p) * sigma}},
                                  std::move(label));
}

SignedKrausMap amplitude_damping_kraus(double gamma) {
    return SignedKrausMap::pruned({{1.0, Op2{1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)}},
                                   {1.0, Op2{0.0, std::sqrt(gamma), 0.0, 0.0}}},
                                  "amplitude_damping");
}

}  // namespace

void validate(const NoiseModel &model) {
    std::visit(Overloaded{
                   [](const BitFlip &m) { check_probability(m.p, "p"); },
                   [](const PhaseFlip &m) { check_probability(m.p, "p"); },
                   [](const BitPhaseFlip &m) { check_probability(m.p, "p"); },
                   [](const Depolarizing &m) { check_probability(m.p, "p"); },
                   [](const GeneralPauli &m) {
                       check_probability(m.px, "px");
                       check_probability(m.py, "py");
                       check_probability(m.pz, "pz");
                       if (m.px + m.py + m.pz > 1.0 + 1e-12) {
                           throw InvalidParameter("general Pauli channel requires px + py + pz <= 1");
                       }
                   },
                   [](const AmplitudeDamping &m) { check_probability(m.gamma, "gamma"); },
                   [](const TwoKraus &m) {
                       check_angle(m.alpha, "alpha");
                       check_angle(m.beta, "beta");
                   },
                   [](const Decoherence &m) {
                       check_probability(m.p, "p");
                       check_probability(m.gamma, "gamma");
                   },
               },
               model);
}

std::string describe(const NoiseModel &model) {
    std::ostringstream out;
    std::visit(Overloaded{
                   [&](const BitFlip &m) { out << "BitFlip{p=" << shortest(m.p) << "}"; },
                   [&](const PhaseFlip &m) { out << "PhaseFlip{p=" << shortest(m.p) << "}"; },
                   [&](const BitPhaseFlip &m) { out << "BitPhaseFlip{p=" << shortest(m.p) << "}"; },
                   [&](const Depolarizing &m) { out << "Depolarizing{p=" << shortest(m.p) << "}"; },
                   [&](const GeneralPauli &m) {
                       out << "GeneralPauli{px=" << shortest(m.px) << ", py=" << shortest(m.py)
                           << ", pz=" << shortest(m.pz) << "}";
                   },
                   [&](const AmplitudeDamping &m) { out << "AmplitudeDamping{gamma=" << shortest(m.gamma) << "}"; },
                   [&](const TwoKraus &m) {
                       out << "TwoKraus{alpha=" << shortest(m.alpha) << ", beta=" << shortest(m.beta) << "}";
                   },
                   [&](const Decoherence &m) {
                       out << "Decoherence{p=" << shortest(m.p) << ", gamma=" << shortest(m.gamma) << "}";
                   },
               },
               model);
    return out.str();
}

std::string kind_name(const NoiseModel &model) {
    static const char *const names[] = {"bitflip", "phaseflip", "bitphaseflip", "depolarizing",
                                        "pauli",   "ad",        "twokraus",     "decoherence"};
    return names[model.index()];
}

SignedKrausMap kraus_of(const NoiseModel &model) {
    validate(model);
    return std::visit(
        Overloaded{
            [](const BitFlip &m) { return flip_kraus(m.p, Op2::sigma_x(), "bit_flip"); },
            [](const PhaseFlip &m) { return flip_kraus(m.p, Op2::sigma_z(), "phase_flip"); },
            [](const BitPhaseFlip &m) { return flip_kraus(m.p, Op2::sigma_y(), "bit_phase_flip"); },
            [](const Depolarizing &m) {
                const double s = 0.5 * std::sqrt(m.p);
                return SignedKrausMap::pruned({{1.0, std::sqrt(1.0 - 0.75 * m.p) * Op2::identity()},
                                               {1.0, s * Op2::sigma_x()},
                                               {1.0, s * Op2::sigma_y()},
                                               {1.0, s * Op2::sigma_z()}},
                                              "depolarizing");
            },
            [](const GeneralPauli &m) {
                const double p0 = std::max(0.0, 1.0 - m.px - m.py - m.pz);
                return SignedKrausMap::pruned({{1.0, std::sqrt(p0) * Op2::identity()},
                                               {1.0, std::sqrt(m.px) * Op2::sigma_x()},
                                               {1.0, std::sqrt(m.py) * Op2::sigma_y()},
                                               {1.0, std::sqrt(m.pz) * Op2::sigma_z()}},
                                              "general_pauli");
            },
            [](const AmplitudeDamping &m) { return amplitude_damping_kraus(m.gamma); },
            [](const TwoKraus &m) {
                const double ca = std::cos(m.alpha), sa = std::sin(m.alpha);
                const double cb = std::cos(m.beta), sb = std::sin(m.beta);
                return SignedKrausMap::pruned({{1.0, Op2{ca, 0.0, 0.0, cb}}, {1.0, Op2{0.0, sb, sa, 0.0}}},
                                              "two_kraus");
            },
            [](const Decoherence &m) {
                SignedKrausMap map = compose(amplitude_damping_kraus(m.gamma),
                                             flip_kraus(m.p, Op2::sigma_z(), "phase_flip"));
                return SignedKrausMap(map.terms(), "decoherence");
            },
        },
        model);
}

Decoherence decoherence_from_times(double t1, double t2, double t) {
    if (!(t1 > 0.0) || !(t2 > 0.0) || !std::isfinite(t1) || !std::isfinite(t2)) {
        throw InvalidParameter("relaxation times must be positive");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("noise duration must be nonnegative");
    if (t2 > 2.0 * t1) {
        std::ostringstream msg;
        msg << "T2 = " << t2 << " exceeds 2*T1 = " << 2.0 * t1;
        throw UnphysicalT2(msg.str());
    }
    const double gamma = -std::expm1(-t / t1);
    const double p = -0.5 * std::expm1(-(t / t2 - t / (2.0 * t1)));
    return {p, gamma};
}

}  // namespace qdeconv
