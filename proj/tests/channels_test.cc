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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "qdeconv/errors.h"
#include "qdeconv/inversion.h"
#include "test_util.h"

namespace qdeconv {
namespace {

using testing::linspace;
using testing::model_grid;
using testing::random_hermitian;
using testing::random_state;
using testing::random_unitary;

Ptm DirectPtm(const NoiseModel &m) { return ptm_of(kraus_of(m)); }

Ptm AmplitudeDampingPtm(double g) {
    Ptm expected = Ptm::diagonal(1, std::sqrt(1 - g), std::sqrt(1 - g), 1 - g);
    expected(3, 0) = g;
    return expected;
}

TEST(SignedKrausMap, RejectsZeroAndNonFiniteWeights) {
    EXPECT_THROW(SignedKrausMap({{0.0, Op2::identity()}}), InvalidParameter);
    EXPECT_THROW(SignedKrausMap({{std::nan(""), Op2::identity()}}), InvalidParameter);
    EXPECT_EQ(SignedKrausMap::pruned({{0.0, Op2::identity()}, {1.0, Op2::zero()}, {1.0, Op2::sigma_x()}}).size(), 1u);
}

TEST(KrausOf, BitFlipTerms) {
    const SignedKrausMap k = kraus_of(BitFlip{0.25});
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k.terms()[0].weight, 1.0);
    EXPECT_EQ(k.terms()[1].weight, 1.0);
    EXPECT_LE(max_abs_diff(k.terms()[0].op, std::sqrt(0.75) * Op2::identity()), 1e-16);
    EXPECT_LE(max_abs_diff(k.terms()[1].op, 0.5 * Op2::sigma_x()), 1e-16);
}

TEST(KrausOf, NoiselessAmplitudeDampingIsSingleIdentity) {
    const SignedKrausMap k = kraus_of(AmplitudeDamping{0.0});
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k.terms()[0].weight, 1.0);
    EXPECT_EQ(k.terms()[0].op, Op2::identity());
}

TEST(KrausOf, TwoKrausEqualAnglesIsBitFlipTermwise) {
    for (double a : linspace(0.1, 3.0, 11)) {
        const SignedKrausMap tk = kraus_of(TwoKraus{a, a});
        const double p = std::sin(a) * std::sin(a);
        ASSERT_EQ(tk.size(), 2u);
        EXPECT_LE(max_abs_diff(tk.terms()[0].op, std::cos(a) * Op2::identity()), 1e-15);
        EXPECT_LE(max_abs_diff(tk.terms()[1].op, std::sin(a) * Op2::sigma_x()), 1e-15);
        EXPECT_LE(max_abs_diff(DirectPtm(TwoKraus{a, a}), DirectPtm(BitFlip{p})), 1e-12);
    }
}

TEST(KrausOf, RejectsInvalidParameters) {
    EXPECT_THROW(kraus_of(BitFlip{-0.1}), InvalidParameter);
    EXPECT_THROW(kraus_of(Depolarizing{1.1}), InvalidParameter);
    EXPECT_THROW(kraus_of(GeneralPauli{0.5, 0.4, 0.2}), InvalidParameter);
    EXPECT_THROW(kraus_of(AmplitudeDamping{std::nan("")}), InvalidParameter);
    EXPECT_THROW(kraus_of(TwoKraus{2 * std::numbers::pi, 0}), InvalidParameter);
    EXPECT_THROW(kraus_of(TwoKraus{-0.1, 0}), InvalidParameter);
    EXPECT_THROW(kraus_of(Decoherence{0.1, 1.5}), InvalidParameter);
}

TEST(KrausOf, GridChannelsAreCptp) {
    for (const NoiseModel &m : model_grid()) {
        const SignedKrausMap k = kraus_of(m);
        EXPECT_TRUE(is_completely_positive(k)) << describe(m);
        EXPECT_TRUE(is_trace_preserving(k)) << describe(m);
        EXPECT_TRUE(DirectPtm(m).is_trace_preserving()) << describe(m);
        for (const KrausTerm &t : k.terms()) EXPECT_EQ(t.weight, 1.0);
    }
}

TEST(Apply, Examples) {
    std::mt19937_64 rng(21);
    const DensityMatrix rho = random_state(rng);
    EXPECT_LE(max_abs_diff(apply(SignedKrausMap::identity(), rho.op()), rho.op()), 0.0);
    const Op2 zero_state(1, 0, 0, 0);
    EXPECT_LE(max_abs_diff(apply(kraus_of(Depolarizing{1.0}), zero_state), 0.5 * Op2::identity()), 1e-16);
    EXPECT_LE(max_abs_diff(apply(kraus_of(BitFlip{0.5}), zero_state), 0.5 * Op2::identity()), 1e-15);
}

TEST(Apply, PreservesHermiticity) {
    std::mt19937_64 rng(22);
    for (const NoiseModel &m : model_grid()) {
        const Op2 out = apply(kraus_of(m), random_hermitian(rng));
        EXPECT_TRUE(out.is_hermitian(1e-12)) << describe(m);
    }
}

TEST(PtmOf, Examples) {
    for (double p : linspace(0, 1, 11)) {
        EXPECT_LE(max_abs_diff(DirectPtm(BitFlip{p}), Ptm::diagonal(1, 1, 1 - 2 * p, 1 - 2 * p)), 1e-15);
        EXPECT_LE(max_abs_diff(DirectPtm(Depolarizing{p}), Ptm::diagonal(1, 1 - p, 1 - p, 1 - p)), 1e-15);
        EXPECT_LE(max_abs_diff(DirectPtm(AmplitudeDamping{p}), AmplitudeDampingPtm(p)), 1e-15);
    }
}

TEST(PtmOf, AgreesWithApplyOnRandomHermitianOperators) {
    std::mt19937_64 rng(23);
    const std::vector<NoiseModel> grid = model_grid();
    for (int n = 0; n < 500; ++n) {
        const NoiseModel &m = grid[n % grid.size()];
        const SignedKrausMap k = kraus_of(m);
        const Op2 o = random_hermitian(rng);
        const Op2 via_ptm = reconstruct(apply_ptm(ptm_of(k), pauli_decompose(o)));
        EXPECT_LE(max_abs_diff(via_ptm, apply(k, o)), 1e-12) << describe(m);
    }
}

TEST(ApplyPtm, Examples) {
    const PauliCoeffs c{0.3, -0.2, 0.1, 0.4};
    const PauliCoeffs same = apply_ptm(Ptm::identity(), c);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(same[i], c[i]);

    const PauliCoeffs z = apply_ptm(DirectPtm(BitFlip{0.25}), {0, 0, 0, 1});
    EXPECT_NEAR(z.cz.real(), 0.5, 1e-15);
    EXPECT_EQ(z.c0, Complex(0));

    const double g = 0.3;
    const PauliCoeffs id = apply_ptm(DirectPtm(AmplitudeDamping{g}), {1, 0, 0, 0});
    EXPECT_NEAR(id.c0.real(), 1.0, 1e-15);
    EXPECT_NEAR(id.cz.real(), g, 1e-15);
}

TEST(PtmPredicates, TraceAndUnitality) {
    EXPECT_TRUE(DirectPtm(BitFlip{0.3}).is_unital());
    EXPECT_FALSE(DirectPtm(AmplitudeDamping{0.3}).is_unital());
    EXPECT_TRUE(DirectPtm(AmplitudeDamping{0.3}).is_trace_preserving());
    EXPECT_FALSE(is_unital(kraus_of(AmplitudeDamping{0.3})));
    EXPECT_TRUE(is_unital(kraus_of(GeneralPauli{0.1, 0.2, 0.3})));
}

TEST(Compose, Examples) {
    const Ptm g = DirectPtm(Decoherence{0.1, 0.2});
    EXPECT_EQ(compose(Ptm::identity(), g), g);
    EXPECT_THROW(compose_n(g, 0), InvalidParameter);

    std::mt19937_64 rng(24);
    for (int n = 0; n < 50; ++n) {
        const double p1 = testing::uniform(rng, 0, 1), p2 = testing::uniform(rng, 0, 1);
        const double total = 1 - (1 - p1) * (1 - p2);
        EXPECT_LE(max_abs_diff(compose(DirectPtm(Depolarizing{p1}), DirectPtm(Depolarizing{p2})),
                               DirectPtm(Depolarizing{total})),
                  1e-12);
    }
}

TEST(Compose, RepeatedDecoherenceContractsCoherence) {
    const double p = 0.01, g = 0.02;
    const Ptm step = DirectPtm(Decoherence{p, g});
    for (int m : {1, 2, 7, 50, 101}) {
        const Ptm pm = compose_n(step, m);
        const double expected = std::pow((1 - 2 * p) * std::sqrt(1 - g), m);
        EXPECT_NEAR(pm(1, 1), expected, 1e-12);
        EXPECT_NEAR(pm(2, 2), expected, 1e-12);
        EXPECT_NEAR(pm(3, 3), std::pow(1 - g, m), 1e-12);
        EXPECT_NEAR(pm(3, 0), 1 - std::pow(1 - g, m), 1e-12);
    }
}

TEST(Compose, DecoherenceIsDampingAfterDephasing) {
    for (double p : linspace(0, 1, 11))
        for (double g : linspace(0, 1, 11)) {
            const Ptm product = AmplitudeDampingPtm(g) * DirectPtm(PhaseFlip{p});
            EXPECT_LE(max_abs_diff(DirectPtm(Decoherence{p, g}), product), 1e-15);
        }
}

TEST(Compose, KrausCompositionMatchesPtmProduct) {
    const SignedKrausMap a = kraus_of(AmplitudeDamping{0.3});
    const SignedKrausMap b = kraus_of(GeneralPauli{0.1, 0.2, 0.05});
    EXPECT_LE(max_abs_diff(ptm_of(compose(a, b)), ptm_of(a) * ptm_of(b)), 1e-15);
}

TEST(Depolarizing, CommutesWithRandomUnitaries) {
    std::mt19937_64 rng(25);
    const Ptm dep = DirectPtm(Depolarizing{0.37});
    for (int n = 0; n < 100; ++n) {
        const Ptm u = ptm_of(SignedKrausMap::unitary(random_unitary(rng)));
        EXPECT_LE(max_abs_diff(dep * u, u * dep), 1e-12);
    }
}

TEST(Choi, ExamplesAndFlags) {
    for (const NoiseModel &m : model_grid()) {
        EXPECT_TRUE(choi_of(kraus_of(m)).is_hermitian()) << describe(m);
    }
    EXPECT_FALSE(is_unital(kraus_of(AmplitudeDamping{0.3})));
    const InverseMap inv = inverse_of(BitFlip{0.25});
    EXPECT_FALSE(is_completely_positive(inv.kraus));
    EXPECT_LT(min_choi_eigenvalue(inv.kraus), 0.0);
}

TEST(Choi, IdentityChannelIsRankOneProjector) {
    const auto ev = choi_of(SignedKrausMap::identity()).eigenvalues();
    EXPECT_NEAR(ev[0], 0.0, 1e-15);
    EXPECT_NEAR(ev[1], 0.0, 1e-15);
    EXPECT_NEAR(ev[2], 0.0, 1e-15);
    EXPECT_NEAR(ev[3], 2.0, 1e-15);
}

// Jacobi spectra checked against a dense LAPACK-style solver.
TEST(Choi, EigenvaluesMatchReferenceSolver) {
    std::mt19937_64 rng(26);
    std::vector<SignedKrausMap> maps;
    for (const NoiseModel &m : model_grid()) maps.push_back(kraus_of(m));
    for (int n = 0; n < 200; ++n) {
        std::vector<KrausTerm> terms;
        for (int k = 0; k < 3; ++k) terms.push_back({testing::uniform(rng, -1, 1), testing::random_op(rng)});
        maps.emplace_back(terms);
    }
    for (const SignedKrausMap &map : maps) {
        const ChoiMatrix c = choi_of(map);
        Eigen::Matrix4cd dense;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) dense(i, j) = c(i, j);
        const Eigen::Vector4d expected = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(dense).eigenvalues();
        const auto got = c.eigenvalues();
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expected(i), 1e-12);
    }
}

TEST(DecoherenceFromTimes, Examples) {
    const Decoherence zero = decoherence_from_times(35.91e-6, 25.11e-6, 0.0);
    EXPECT_EQ(zero.p, 0.0);
    EXPECT_EQ(zero.gamma, 0.0);

    for (double t : {1e-9, 40e-9, 1e-6}) {
        EXPECT_NEAR(decoherence_from_times(20e-6, 40e-6, t).p, 0.0, 1e-17);
    }

    const Decoherence q25 = decoherence_from_times(35.91e-6, 25.11e-6, 40e-9);
    EXPECT_NEAR(q25.gamma, 0.0011132756990376302, 1e-15);
    EXPECT_NEAR(q25.p, 0.0005177532038851962, 1e-15);
    EXPECT_NEAR((1 - 2 * q25.p) * std::sqrt(1 - q25.gamma), std::exp(-40e-9 / 25.11e-6), 1e-15);
}

TEST(DecoherenceFromTimes, RejectsBadTimes) {
    EXPECT_THROW(decoherence_from_times(0.0, 1e-6, 1e-9), InvalidParameter);
    EXPECT_THROW(decoherence_from_times(1e-6, -1e-6, 1e-9), InvalidParameter);
    EXPECT_THROW(decoherence_from_times(1e-6, 1e-6, -1e-9), InvalidParameter);
    EXPECT_THROW(decoherence_from_times(10e-6, 20.1e-6, 1e-9), UnphysicalT2);
}

TEST(Describe, NamesAndKinds) {
    EXPECT_EQ(describe(BitFlip{0.25}), "BitFlip{p=0.25}");
    EXPECT_EQ(describe(GeneralPauli{0.1, 0.05, 0.2}), "GeneralPauli{px=0.1, py=0.05, pz=0.2}");
    EXPECT_EQ(kind_name(AmplitudeDamping{0.1}), "ad");
    EXPECT_EQ(kind_name(Decoherence{0.1, 0.1}), "decoherence");
}

}  // namespace
}  // namespace qdeconv
