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

#ifndef QDECONV_SRC_JACOBI_H
#define QDECONV_SRC_JACOBI_H

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qdeconv::detail {

inline constexpr double kJacobiOffDiagonalThreshold = 1e-14;
inline constexpr int kJacobiMaxSweeps = 50;

/// Eigenvalues (ascending) of a real symmetric N x N matrix, cyclic Jacobi.
template <std::size_t N>
std::array<double, N> symmetric_eigenvalues(std::array<double, N * N> a) {
    auto at = [&a](std::size_t r, std::size_t c) -> double & { return a[N * r + c]; };
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double threshold = kJacobiOffDiagonalThreshold * std::max(1.0, scale);

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = r + 1; c < N; ++c) off += at(r, c) * at(r, c);
        if (std::sqrt(off) < threshold) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::array<double, N> eig{};
    for (std::size_t k = 0; k < N; ++k) eig[k] = at(k, k);
    std::sort(eig.begin(), eig.end());
    return eig;
}

/// Eigenvalues (ascending) of a complex Hermitian N x N matrix. Uses the real
/// symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is each
/// eigenvalue twice.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const std::array<std::complex<double>, N * N> &h) {
    constexpr std::size_t M = 2 * N;
    std::array<double, M * M> real{};
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) {
            // Symmetrise to absorb rounding in the input.
            const std::complex<double> v = 0.5 * (h[N * r + c] + std::conj(h[N * c + r]));
            real[M * r + c] = v.real();
            real[M * (r + N) + (c + N)] = v.real();
            real[M * r + (c + N)] = -v.imag();
            real[M * (r + N) + c] = v.imag();
        }
    }
    const std::array<double, M> doubled = symmetric_eigenvalues<M>(real);
    std::array<double, N> eig{};
    for (std::size_t k = 0; k < N; ++k) eig[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
    return eig;
}

}  // namespace qdeconv::detail

#endif  // QDECONV_SRC_JACOBI_H
