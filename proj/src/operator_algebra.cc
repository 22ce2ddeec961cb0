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

#include "qdeconv/operator_algebra.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdeconv/errors.h"

namespace qdeconv {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

char axis_name(Axis a) {
    switch (a) {
        case Axis::X:
            return 'x';
        case Axis::Y:
            return 'y';
        case Axis::Z:
            return 'z';
    }
    return '?';
}

Axis parse_axis(const std::string &s) {
    if (s == "x" || s == "X") return Axis::X;
    if (s == "y" || s == "Y") return Axis::Y;
    if (s == "z" || s == "Z") return Axis::Z;
    throw InvalidParameter("unknown measurement basis '" + s + "'");
}

Op2::Op2(Complex a00, Complex a01, Complex a10, Complex a11) : m_{a00, a01, a10, a11} {
    for (const Complex &v : m_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidParameter("Op2 entries must be finite");
        }
    }
}

Op2 Op2::identity() { return {1.0, 0.0, 0.0, 1.0}; }
Op2 Op2::zero() { return {}; }
Op2 Op2::sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
Op2 Op2::sigma_y() { return {0.0, -kI, kI, 0.0}; }
Op2 Op2::sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

const Op2 &Op2::pauli(int index) {
    static const std::array<Op2, 4> basis = {identity(), sigma_x(), sigma_y(), sigma_z()};
    return basis.at(static_cast<std::size_t>(index));
}

Op2 Op2::dagger() const {
    Op2 r;
    r.m_ = {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
    return r;
}

bool Op2::is_hermitian(double tol) const { return max_abs_diff(*this, dagger()) <= tol; }

bool Op2::is_zero() const {
    return std::all_of(m_.begin(), m_.end(), [](const Complex &v) { return v == Complex{}; });
}

Op2 operator+(const Op2 &a, const Op2 &b) {
    Op2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k] = a.m_[k] + b.m_[k];
    return r;
}

Op2 operator-(const Op2 &a, const Op2 &b) {
    Op2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k] = a.m_[k] - b.m_[k];
    return r;
}

Op2 operator*(const Op2 &a, const Op2 &b) {
    Op2 r;
    r.m_[0] = a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2];
    r.m_[1] = a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3];
    r.m_[2] = a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2];
    r.m_[3] = a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3];
    return r;
}

Op2 operator*(Complex s, const Op2 &a) {
    Op2 r;
    for (std::size_t k = 0; k < 4; ++k) r.m_[k] = s * a.m_[k];
    return r;
}

double max_abs_diff(const Op2 &a, const Op2 &b) {
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

Complex PauliCoeffs::operator[](int i) const {
    switch (i) {
        case 0:
            return c0;
        case 1:
            return cx;
        case 2:
            return cy;
        default:
            return cz;
    }
}

Complex &PauliCoeffs::operator[](int i) {
    switch (i) {
        case 0:
            return c0;
        case 1:
            return cx;
        case 2:
            return cy;
        default:
            return cz;
    }
}

bool PauliCoeffs::is_real(double tol) const {
    return std::abs(c0.imag()) <= tol && std::abs(cx.imag()) <= tol && std::abs(cy.imag()) <= tol &&
           std::abs(cz.imag()) <= tol;
}

PauliCoeffs pauli_decompose(const Op2 &o) {
    const Complex a = o(0, 0), b = o(0, 1), c = o(1, 0), d = o(1, 1);
    return {0.5 * (a + d), 0.5 * (b + c), 0.5 * kI * (b - c), 0.5 * (a - d)};
}

Op2 reconstruct(const PauliCoeffs &c) {
    return {c.c0 + c.cz, c.cx - kI * c.cy, c.cx + kI * c.cy, c.c0 - c.cz};
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix::DensityMatrix(const Op2 &op, const Tolerances &tol) : op_(op) {
    if (!op.is_hermitian(tol.exact)) throw InvalidParameter("density matrix is not Hermitian");
    if (std::abs(op.trace() - 1.0) > tol.exact) {
        std::ostringstream msg;
        msg << "density matrix trace " << op.trace().real() << " != 1";
        throw InvalidParameter(msg.str());
    }
    const auto [lo, hi] = eigenvalues_hermitian(op, tol.exact);
    (void)hi;
    if (lo < -tol.positivity) throw InvalidParameter("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::unchecked(const Op2 &op) { return DensityMatrix(op, UncheckedTag{}); }

DensityMatrix DensityMatrix::from_bloch(const BlochVector &r) {
    return DensityMatrix(reconstruct({0.5, 0.5 * r.x, 0.5 * r.y, 0.5 * r.z}));
}

DensityMatrix DensityMatrix::maximally_mixed() { return unchecked({0.5, 0.0, 0.0, 0.5}); }

DensityMatrix DensityMatrix::pure(Complex a, Complex b) {
    return DensityMatrix(Op2{a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b)});
}

BlochVector DensityMatrix::bloch() const {
    const PauliCoeffs c = pauli_decompose(op_);
    return {2.0 * c.cx.real(), 2.0 * c.cy.real(), 2.0 * c.cz.real()};
}

Complex expectation(const Op2 &obs, const Op2 &state) {
    return obs(0, 0) * state(0, 0) + obs(0, 1) * state(1, 0) + obs(1, 0) * state(0, 1) +
           obs(1, 1) * state(1, 1);
}

std::pair<double, double> eigenvalues_hermitian(const Op2 &o, double tol) {
    if (!o.is_hermitian(tol)) throw NotHermitian("eigenvalues_hermitian: operator is not Hermitian");
    const double a = o(0, 0).real();
    const double d = o(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(o(0, 1)));
    return {mean - radius, mean + radius};
}

Op2 rotation_y(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return {c, -s, s, c};
}

}  // namespace qdeconv
