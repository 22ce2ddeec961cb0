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

#ifndef QDECONV_OPERATOR_ALGEBRA_H
#define QDECONV_OPERATOR_ALGEBRA_H

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

namespace qdeconv {

using Complex = std::complex<double>;

/// Numerical thresholds shared by every module. Pass a modified copy to the
/// constructors and operations that accept one.
struct Tolerances {
    /// Exact-arithmetic identities (Hermiticity, trace, PTM structure).
    double exact = 1e-12;
    /// Eigenvalue positivity (density matrices, Choi spectra).
    double positivity = 1e-10;
    /// Distance from a singular point below which a channel counts as non-invertible.
    double singular = 1e-6;
    /// Largest admissible magnitude of a deconvolution correction factor.
    double correction_cap = 1e6;
};

/// Measurement axis / Pauli index. Values double as indices into x,y,z arrays.
enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAxes = {Axis::X, Axis::Y, Axis::Z};

char axis_name(Axis a);
Axis parse_axis(const std::string &s);

/// 2x2 complex matrix, row-major. Entries are finite.
class Op2 {
public:
    Op2() = default;
    Op2(Complex a00, Complex a01, Complex a10, Complex a11);

    static Op2 identity();
    static Op2 zero();
    static Op2 sigma_x();
    static Op2 sigma_y();
    static Op2 sigma_z();
    /// sigma_0 = I, sigma_1..3 = X, Y, Z.
    static const Op2 &pauli(int index);
    static const Op2 &pauli(Axis a) { return pauli(static_cast<int>(a) + 1); }

    Complex operator()(std::size_t row, std::size_t col) const { return m_[2 * row + col]; }
    Complex &operator()(std::size_t row, std::size_t col) { return m_[2 * row + col]; }
    const std::array<Complex, 4> &entries() const { return m_; }

    Op2 dagger() const;
    Complex trace() const { return m_[0] + m_[3]; }
    bool is_hermitian(double tol = 1e-12) const;
    bool is_zero() const;

    friend Op2 operator+(const Op2 &a, const Op2 &b);
    friend Op2 operator-(const Op2 &a, const Op2 &b);
    friend Op2 operator*(const Op2 &a, const Op2 &b);
    friend Op2 operator*(Complex s, const Op2 &a);
    friend Op2 operator*(const Op2 &a, Complex s) { return s * a; }
    friend bool operator==(const Op2 &a, const Op2 &b) = default;

private:
    std::array<Complex, 4> m_{};
};

double max_abs_diff(const Op2 &a, const Op2 &b);

/// O = c0*I + cx*X + cy*Y + cz*Z.
struct PauliCoeffs {
    Complex c0, cx, cy, cz;

    Complex operator[](int i) const;
    Complex &operator[](int i);
    bool is_real(double tol = 1e-12) const;
};

/// c_i = Tr[sigma_i O] / 2.
PauliCoeffs pauli_decompose(const Op2 &o);
Op2 reconstruct(const PauliCoeffs &c);

struct BlochVector {
    double x = 0, y = 0, z = 0;

    double operator[](Axis a) const { return a == Axis::X ? x : (a == Axis::Y ? y : z); }
    double norm() const;
};

/// Qubit state. The checked constructor enforces Hermiticity, unit trace,
/// positivity and |r| <= 1; `unchecked` skips all of that for inner loops.
class DensityMatrix {
public:
    explicit DensityMatrix(const Op2 &op, const Tolerances &tol = {});

    static DensityMatrix unchecked(const Op2 &op);
    static DensityMatrix from_bloch(const BlochVector &r);
    static DensityMatrix maximally_mixed();
    /// |psi><psi| for a (normalised) state vector (a, b).
    static DensityMatrix pure(Complex a, Complex b);

    const Op2 &op() const { return op_; }
    BlochVector bloch() const;

private:
    struct UncheckedTag {};
    DensityMatrix(const Op2 &op, UncheckedTag) : op_(op) {}
    Op2 op_;
};

/// Tr[obs * state].
Complex expectation(const Op2 &obs, const Op2 &state);
inline Complex expectation(const Op2 &obs, const DensityMatrix &state) {
    return expectation(obs, state.op());
}

/// Closed-form eigenvalues (ascending) of a Hermitian 2x2 operator.
/// Throws NotHermitian if o deviates from o^dagger by more than `tol`.
std::pair<double, double> eigenvalues_hermitian(const Op2 &o, double tol = 1e-10);

/// exp(-i theta sigma_y / 2).
Op2 rotation_y(double theta);

}  // namespace qdeconv

#endif  // QDECONV_OPERATOR_ALGEBRA_H
