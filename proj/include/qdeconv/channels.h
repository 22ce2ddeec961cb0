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

#ifndef QDECONV_CHANNELS_H
#define QDECONV_CHANNELS_H

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "qdeconv/operator_algebra.h"

namespace qdeconv {

//==========================================================================
// Pauli transfer matrix
//==========================================================================

/// 4x4 real matrix in the {I, X, Y, Z} basis, row-major.
/// Gamma_ij = Tr[sigma_i Phi(sigma_j)] / 2.
class Ptm {
public:
    Ptm() = default;
    explicit Ptm(const std::array<double, 16> &entries) : m_(entries) {}

    static Ptm identity();
    static Ptm diagonal(double d0, double d1, double d2, double d3);

    double operator()(std::size_t row, std::size_t col) const { return m_[4 * row + col]; }
    double &operator()(std::size_t row, std::size_t col) { return m_[4 * row + col]; }
    const std::array<double, 16> &entries() const { return m_; }

    double determinant() const;
    bool is_diagonal(double tol = 1e-12) const;
    /// First row equals (1, 0, 0, 0).
    bool is_trace_preserving(double tol = 1e-10) const;
    /// First column equals (1, 0, 0, 0)^T.
    bool is_unital(double tol = 1e-10) const;

    friend Ptm operator*(const Ptm &a, const Ptm &b);
    friend bool operator==(const Ptm &a, const Ptm &b) = default;

private:
    std::array<double, 16> m_{};
};

double max_abs_diff(const Ptm &a, const Ptm &b);

//==========================================================================
// Signed operator sums
//==========================================================================

struct KrausTerm {
    double weight;
    Op2 op;
};

/// Phi(rho) = sum_k w_k A_k rho A_k^dagger with real weights. Covers CPTP
/// channels (all w_k > 0) and their non-CP inverses.
class SignedKrausMap {
public:
    SignedKrausMap() = default;
    /// Throws InvalidParameter on zero or non-finite weights.
    explicit SignedKrausMap(std::vector<KrausTerm> terms, std::string label = {});

    /// Same as the constructor but silently drops zero-weight and zero-operator terms.
    static SignedKrausMap pruned(const std::vector<KrausTerm> &terms, std::string label = {});
    static SignedKrausMap identity();
    /// The unitary channel rho -> U rho U^dagger.
    static SignedKrausMap unitary(const Op2 &u);

    const std::vector<KrausTerm> &terms() const { return terms_; }
    const std::string &label() const { return label_; }
    std::size_t size() const { return terms_.size(); }

private:
    std::vector<KrausTerm> terms_;
    std::string label_;
};

Op2 apply(const SignedKrausMap &map, const Op2 &state);
Ptm ptm_of(const SignedKrausMap &map);

/// Matrix-vector product Gamma |O>>.
PauliCoeffs apply_ptm(const Ptm &ptm, const PauliCoeffs &coeffs);

/// outer . inner
Ptm compose(const Ptm &outer, const Ptm &inner);
/// m-fold power, m >= 1.
Ptm compose_n(const Ptm &ptm, int m);
/// Operator sum of outer . inner (pairwise products of terms).
SignedKrausMap compose(const SignedKrausMap &outer, const SignedKrausMap &inner);

//==========================================================================
// Choi matrix and channel predicates
//==========================================================================

/// sum_k w_k (A_k (x) I)|Omega><Omega|(A_k^dagger (x) I) with the
/// unnormalised |Omega> = |00> + |11>. Index (i, j) -> 2 i + j.
class ChoiMatrix {
public:
    explicit ChoiMatrix(const std::array<Complex, 16> &entries) : m_(entries) {}

    Complex operator()(std::size_t row, std::size_t col) const { return m_[4 * row + col]; }
    const std::array<Complex, 16> &entries() const { return m_; }
    bool is_hermitian(double tol = 1e-10) const;
    /// Ascending eigenvalues via cyclic Jacobi.
    std::array<double, 4> eigenvalues() const;

private:
    std::array<Complex, 16> m_;
};

ChoiMatrix choi_of(const SignedKrausMap &map);
double min_choi_eigenvalue(const SignedKrausMap &map);
bool is_completely_positive(const SignedKrausMap &map, const Tolerances &tol = {});
bool is_trace_preserving(const SignedKrausMap &map, const Tolerances &tol = {});
bool is_unital(const SignedKrausMap &map, const Tolerances &tol = {});

//==========================================================================
// Parametric noise models
//==========================================================================

struct BitFlip {
    double p;
};
struct PhaseFlip {
    double p;
};
struct BitPhaseFlip {
    double p;
};
struct Depolarizing {
    double p;
};
struct GeneralPauli {
    double px, py, pz;
};
struct AmplitudeDamping {
    double gamma;
};
/// A1 = cos(a)|0><0| + cos(b)|1><1|, A2 = sin(b)|0><1| + sin(a)|1><0|.
struct TwoKraus {
    double alpha, beta;
};
/// Dephasing with probability p followed by amplitude damping gamma.
struct Decoherence {
    double p, gamma;
};

using NoiseModel = std::variant<BitFlip, PhaseFlip, BitPhaseFlip, Depolarizing, GeneralPauli,
                                AmplitudeDamping, TwoKraus, Decoherence>;

/// Throws InvalidParameter if the parameters violate the model invariants.
void validate(const NoiseModel &model);
std::string describe(const NoiseModel &model);
/// Short tag: bitflip, phaseflip, bitphaseflip, depolarizing, pauli, ad, twokraus, decoherence.
std::string kind_name(const NoiseModel &model);

/// Kraus operators of the model; all weights are +1.
SignedKrausMap kraus_of(const NoiseModel &model);

/// gamma = 1 - exp(-t/T1), p = (1 - exp(-(t/T2 - t/(2 T1)))) / 2.
Decoherence decoherence_from_times(double t1, double t2, double t);

}  // namespace qdeconv

#endif  // QDECONV_CHANNELS_H
