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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdeconv/errors.h"
#include "test_util.h"

namespace qdeconv {
namespace {

using testing::invertible_grid;
using testing::linspace;
using testing::model_grid;

Ptm DirectPtm(const NoiseModel &m) { return ptm_of(kraus_of(m)); }

std::array<double, 4> PauliWeights(const SignedKrausMap &map) {
    std::array<double, 4> beta{};
    for (const KrausTerm &t : map.terms()) {
        bool matched = false;
        for (int j = 0; j < 4; ++j) {
            // Terms are (w, c sigma_j); the channel weight is w |c|^2.
            const Complex c = pauli_decompose(t.op)[j];
            if (std::abs(c) > 1e-14) {
                EXPECT_FALSE(matched) << "term mixes several Paulis";
                beta[j] += t.weight * std::norm(c);
                matched = true;
            }
        }
    }
    return beta;
}

TEST(InvertPtm, Examples) {
    EXPECT_LE(max_abs_diff(invert_ptm(Ptm::diagonal(1, 1, 0.5, 0.5)), Ptm::diagonal(1, 1, 2, 2)), 1e-15);
    EXPECT_EQ(invert_ptm(Ptm::identity()), Ptm::identity());
    try {
        invert_ptm(DirectPtm(BitFlip{0.5}));
        FAIL() << "expected SingularPtm";
    } catch (const SingularPtm &e) {
        EXPECT_EQ(e.determinant, 0.0);
    }
}

TEST(InvertPtm, ProductIsIdentityOnGrid) {
    for (const NoiseModel &m : model_grid()) {
        const Ptm g = DirectPtm(m);
        if (std::abs(g.determinant()) <= 1e-8) continue;
        const Ptm inv = invert_ptm(g);
        EXPECT_LE(max_abs_diff(inv * g, Ptm::identity()), 1e-10) << describe(m);
        EXPECT_LE(max_abs_diff(g * inv, Ptm::identity()), 1e-10) << describe(m);
    }
}

TEST(InverseOf, BitFlipWeights) {
    const InverseMap inv = inverse_of(BitFlip{0.25});
    const auto beta = PauliWeights(inv.kraus);
    EXPECT_NEAR(beta[0], 1.5, 1e-15);
    EXPECT_NEAR(beta[1], -0.5, 1e-15);
    EXPECT_EQ(beta[2], 0.0);
    EXPECT_EQ(beta[3], 0.0);
}

TEST(InverseOf, GeneralPauliDiagonal) {
    const InverseMap inv = inverse_of(GeneralPauli{0.1, 0.05, 0.2});
    EXPECT_LE(max_abs_diff(inv.ptm, Ptm::diagonal(1, 2.0, 2.5, 1 / 0.7)), 1e-14);
    EXPECT_LE(max_abs_diff(ptm_of(inv.kraus), inv.ptm), 1e-12);
}

TEST(InverseOf, AmplitudeDampingOperators) {
    const InverseMap inv = inverse_of(AmplitudeDamping{0.36});
    ASSERT_EQ(inv.kraus.size(), 2u);
    EXPECT_EQ(inv.kraus.terms()[0].weight, 1.0);
    EXPECT_EQ(inv.kraus.terms()[1].weight, -1.0);
    EXPECT_LE(max_abs_diff(inv.kraus.terms()[0].op, Op2(1, 0, 0, 1.25)), 1e-15);
    EXPECT_LE(max_abs_diff(inv.kraus.terms()[1].op, Op2(0, std::sqrt(0.5625), 0, 0)), 1e-15);
}

TEST(InverseOf, GeneralPauliReducesToBitFlip) {
    for (double p : linspace(0, 1, 21)) {
        if (std::abs(p - 0.5) < 1e-9) continue;
        const auto beta = PauliWeights(inverse_of(GeneralPauli{p, 0, 0}).kraus);
        EXPECT_NEAR(beta[0], (1 - p) / (1 - 2 * p), 1e-12);
        EXPECT_NEAR(beta[1], -p / (1 - 2 * p), 1e-12);
        EXPECT_NEAR(beta[2], 0.0, 1e-15);
        EXPECT_NEAR(beta[3], 0.0, 1e-15);
    }
}

TEST(InverseOf, GeneralPauliBetasAreAxisSymmetric) {
    // Relabelling axes permutes the betas, so each one follows the same rule.
    const double px = 0.1, py = 0.05, pz = 0.2;
    const auto beta = PauliWeights(inverse_of(GeneralPauli{px, py, pz}).kraus);
    const double lx = 1 - 2 * (py + pz), ly = 1 - 2 * (px + pz), lz = 1 - 2 * (px + py);
    EXPECT_NEAR(beta[1], (1 + 1 / lx - 1 / ly - 1 / lz) / 4, 1e-14);
    EXPECT_NEAR(beta[2], (1 - 1 / lx + 1 / ly - 1 / lz) / 4, 1e-14);
    EXPECT_NEAR(beta[3], (1 - 1 / lx - 1 / ly + 1 / lz) / 4, 1e-14);
}

TEST(InverseOf, SingularPointsRaise) {
    EXPECT_THROW(inverse_of(BitFlip{0.5}), NonInvertible);
    EXPECT_THROW(inverse_of(PhaseFlip{0.5 + 1e-8}), NonInvertible);
    EXPECT_THROW(inverse_of(Depolarizing{1.0}), NonInvertible);
    EXPECT_THROW(inverse_of(GeneralPauli{0.3, 0.2, 0.1}), NonInvertible);
    EXPECT_THROW(inverse_of(AmplitudeDamping{1.0}), NonInvertible);
    EXPECT_THROW(inverse_of(TwoKraus{std::numbers::pi / 4, std::numbers::pi / 4}), NonInvertible);
    EXPECT_THROW(inverse_of(TwoKraus{0.0, std::numbers::pi / 2}), NonInvertible);
    EXPECT_THROW(inverse_of(Decoherence{0.5, 0.1}), NonInvertible);
    EXPECT_THROW(inverse_of(Decoherence{0.1, 1.0}), NonInvertible);
    EXPECT_NO_THROW(inverse_of(BitFlip{0.5 - 1e-3}));
    try {
        inverse_of(BitFlip{0.5});
    } catch (const NonInvertible &e) {
        EXPECT_EQ(e.model, "BitFlip{p=0.5}");
        EXPECT_FALSE(e.reason.empty());
    }
}

TEST(InverseOf, ThresholdIsConfigurable) {
    Tolerances loose;
    loose.singular = 0.1;
    EXPECT_THROW(inverse_of(BitFlip{0.46}, loose), NonInvertible);
    EXPECT_NO_THROW(inverse_of(BitFlip{0.46}));
}

TEST(InverseOf, SkippedGridPointsAreSingular) {
    for (const NoiseModel &m : model_grid()) {
        try {
            inverse_of(m);
        } catch (const NonInvertible &) {
            EXPECT_LE(std::abs(DirectPtm(m).determinant()), 1e-5) << describe(m);
        }
    }
}

TEST(InverseOf, ClosedFormsMatchNumericInverseOnGrid) {
    for (const auto &[model, inv] : invertible_grid()) {
        const Ptm g = DirectPtm(model);
        EXPECT_LE(max_abs_diff(ptm_of(inv.kraus), inv.ptm), 1e-12) << describe(model);
        EXPECT_LE(max_abs_diff(inv.ptm, invert_ptm(g)), 1e-12 * std::max(1.0, std::abs(inv.ptm(3, 3))))
            << describe(model);
        EXPECT_LE(max_abs_diff(inv.ptm * g, Ptm::identity()), 1e-10) << describe(model);
        EXPECT_LE(max_abs_diff(g * inv.ptm, Ptm::identity()), 1e-10) << describe(model);
        EXPECT_TRUE(inv.ptm.is_trace_preserving()) << describe(model);
        EXPECT_TRUE(is_trace_preserving(inv.kraus)) << describe(model);
    }
}

TEST(InverseOf, NontrivialInversesAreNotCp) {
    for (const auto &[model, inv] : invertible_grid()) {
        if (testing::is_unitary_channel(model)) {
            EXPECT_TRUE(is_completely_positive(inv.kraus)) << describe(model);
            continue;
        }
        EXPECT_LT(min_choi_eigenvalue(inv.kraus), -1e-8) << describe(model);
    }
}

TEST(InverseOf, TwoKrausAtZeroAlphaIsAmplitudeDamping) {
    for (double b : linspace(0, 1.5, 16)) {
        const double g = std::sin(b) * std::sin(b);
        const InverseMap tk = inverse_of(TwoKraus{0, b});
        const InverseMap ad = inverse_of(AmplitudeDamping{g});
        EXPECT_LE(max_abs_diff(tk.ptm, ad.ptm), 1e-12) << b;
        EXPECT_LE(max_abs_diff(ptm_of(tk.kraus), ptm_of(ad.kraus)), 1e-12) << b;
    }
}

TEST(InverseOf, TwoKrausPtmEntries) {
    const double a = 0.3, b = 0.5;
    const InverseMap inv = inverse_of(TwoKraus{a, b});
    const double h = 2 / (std::cos(2 * a) + std::cos(2 * b));
    EXPECT_NEAR(inv.ptm(1, 1), 1 / std::cos(a - b), 1e-14);
    EXPECT_NEAR(inv.ptm(2, 2), 1 / std::cos(a + b), 1e-14);
    EXPECT_NEAR(inv.ptm(3, 3), h, 1e-14);
    EXPECT_NEAR(inv.ptm(3, 0), (std::cos(2 * b) - std::cos(2 * a)) / (std::cos(2 * a) + std::cos(2 * b)), 1e-14);
}

TEST(OperatorSumFromPauliDiagonal, Examples) {
    auto beta = PauliWeights(operator_sum_from_pauli_diagonal(Ptm::identity()));
    EXPECT_EQ(beta[0], 1.0);
    EXPECT_EQ(beta[1] + beta[2] + beta[3], 0.0);

    beta = PauliWeights(operator_sum_from_pauli_diagonal(invert_ptm(DirectPtm(BitFlip{0.25}))));
    EXPECT_NEAR(beta[0], 1.5, 1e-15);
    EXPECT_NEAR(beta[1], -0.5, 1e-15);

    beta = PauliWeights(operator_sum_from_pauli_diagonal(invert_ptm(DirectPtm(Depolarizing{0.2}))));
    EXPECT_NEAR(beta[0], 1.1875, 1e-15);
    for (int j = 1; j < 4; ++j) EXPECT_NEAR(beta[j], -0.0625, 1e-15);
}

TEST(OperatorSumFromPauliDiagonal, ReproducesInputPtm) {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 200; ++n) {
        const Ptm d = Ptm::diagonal(1, testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3),
                                    testing::uniform(rng, -3, 3));
        EXPECT_LE(max_abs_diff(ptm_of(operator_sum_from_pauli_diagonal(d)), d), 1e-12);
    }
}

TEST(OperatorSumFromPauliDiagonal, RejectsBadInput) {
    EXPECT_THROW(operator_sum_from_pauli_diagonal(DirectPtm(AmplitudeDamping{0.3})), NotDiagonal);
    EXPECT_THROW(operator_sum_from_pauli_diagonal(Ptm::diagonal(2, 1, 1, 1)), InvalidParameter);
}

TEST(Adjoint, PauliMapsAreSelfAdjoint) {
    const SignedKrausMap k = inverse_of(GeneralPauli{0.1, 0.05, 0.2}).kraus;
    const SignedKrausMap a = adjoint(k);
    ASSERT_EQ(a.size(), k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        EXPECT_EQ(a.terms()[i].weight, k.terms()[i].weight);
        EXPECT_LE(max_abs_diff(a.terms()[i].op, k.terms()[i].op), 0.0);
    }
}

TEST(Adjoint, AmplitudeDampingInverseTransposesLowering) {
    const double g = 0.36;
    const SignedKrausMap a = adjoint(inverse_of(AmplitudeDamping{g}).kraus);
    EXPECT_LE(max_abs_diff(a.terms()[1].op, Op2(0, 0, 0.75, 0)), 1e-15);
}

TEST(Adjoint, HilbertSchmidtDuality) {
    std::mt19937_64 rng(32);
    const std::vector<testing::GridInverse> grid = invertible_grid();
    auto inner = [](const Op2 &a, const Op2 &b) { return (a.dagger() * b).trace(); };
    for (int n = 0; n < 200; ++n) {
        const SignedKrausMap &phi = grid[(n * 37) % grid.size()].inverse.kraus;
        const Op2 a = testing::random_op(rng), b = testing::random_op(rng);
        const Complex lhs = inner(a, apply(phi, b));
        const Complex rhs = inner(apply(adjoint(phi), a), b);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST(VerifyInverse, Examples) {
    InverseReport r = verify_inverse(BitFlip{0.25}, inverse_of(BitFlip{0.25}));
    EXPECT_LE(r.max_deviation, 1e-12);
    EXPECT_TRUE(r.direct_cp);
    EXPECT_FALSE(r.inverse_cp);
    EXPECT_LT(r.inverse_min_choi, 0.0);

    r = verify_inverse(Depolarizing{0.0}, inverse_of(Depolarizing{0.0}));
    EXPECT_EQ(r.max_deviation, 0.0);
    EXPECT_TRUE(r.inverse_cp);

    r = verify_inverse(TwoKraus{0.3, 0.5}, inverse_of(TwoKraus{0.3, 0.5}));
    EXPECT_LE(r.max_deviation, 1e-10);
    EXPECT_FALSE(r.inverse_cp);
}

}  // namespace
}  // namespace qdeconv
