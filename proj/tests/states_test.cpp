// Copyright 2026 The sodelab Authors
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

#include "sodelab/states.hpp"

#include <numbers>

#include "gtest/gtest.h"

#include "sodelab/errors.hpp"
#include "sodelab/measures.hpp"
#include "test_support.hpp"

using namespace sodelab;
using namespace sodelab::testing;

namespace {

void expect_valid(const QuantumState &s) {
    EXPECT_NEAR(s.rho().trace().real(), 1, 1e-12);
    EXPECT_LT(linalg::hermiticity_defect(s.rho()), 1e-12);
    EXPECT_GT(linalg::hermitian_eigenvalues(s.rho()).minCoeff(), -1e-10);
    if (s.is_pure()) EXPECT_NEAR(s.purity(), 1, 1e-10);
}

}  // namespace

TEST(build, every_family_is_a_valid_state) {
    using namespace family;
    const std::vector<StateFamily> all = {
        PureTheta{0.3},
        Ansatz{0.1, 0.2, 0.3, 0.1, 0.3},
        RhoM{0.4},
        RhoK{0.4},
        RhoC{0.5, 0.3, 0.2},
        RhoSL{0.6, 0.5},
        RhoItot{0.3, 0.0},
        GHZ{},
        W{},
        WPrime{},
        Symmetric{{0.5, 0.5, 0.5, 0.5}},
        GType{0.3},
        JState{0.6},
        Upsilon{0.6, 0.6, std::sqrt(0.28)},
        Lambda{0.6, 0.0, 0.8},
        Omega{0.5, 0.5, 0.5, 0.5},
        General3{{1, 0, 0, 0, 0, 0, 0, 0}},
        GTypeK{5, 0.6, 0.8},
        WK{6},
        ZState{4, 0.3, 1.0},
    };
    for (const auto &f : all) expect_valid(build(f));
}

TEST(build, named_examples) {
    EXPECT_NEAR(negativity(build(family::PureTheta{std::numbers::pi / 4}), 0), 1, 1e-12);
    EXPECT_NEAR(negativity(build(family::WK{3}), 0), 2 * std::sqrt(2.0) / 3, 1e-12);
    EXPECT_NEAR(negativity(build(family::WK{3}), 0), 0.942809, 1e-6);
    // q = 1 drops the W branch, leaving GHZ_3 for any phase.
    for (double phi : {0.0, 1.3, 4.0}) {
        const QuantumState z = build(family::ZState{3, 1.0, phi});
        EXPECT_LT(max_abs_diff(z.rho(), build(family::GHZ{}).rho()), 1e-14);
        EXPECT_NEAR(negativity(z, 0), 1, 1e-12);
    }
    EXPECT_NEAR(invariants3(build(family::GType{0.5})).tau, 1, 1e-12);
}

TEST(build, rejects_bad_parameters_by_name) {
    auto message = [](const StateFamily &f) {
        try {
            build(f);
        } catch (const std::invalid_argument &e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(family::PureTheta{1.0}).find("theta"), std::string::npos);
    EXPECT_NE(message(family::Ansatz{-0.1, 0.2, 0.3, 0.3, 0.3}).find("x"), std::string::npos);
    EXPECT_NE(message(family::Ansatz{0.2, 0.2, 0.2, 0.2, 0.3}).find("gamma"), std::string::npos);
    EXPECT_NE(message(family::RhoC{0.5, -0.1, 0.6}).find("a"), std::string::npos);
    EXPECT_NE(message(family::ZState{3, 1.5, 0}).find("q"), std::string::npos);
    EXPECT_NE(message(family::Symmetric{{1, 1, 0, 0}}).find("Symmetric"), std::string::npos);
    EXPECT_FALSE(message(family::WK{1}).empty());
}

TEST(build, rho_sl_equals_its_ansatz_form) {
    // The X-shaped parameters of rho_SL have y <= 0, so the matrix is assembled directly
    // rather than through the non-negative Ansatz builder.
    for (double g : {0.0, 0.2, 0.7, 1.0}) {
        for (double th : {0.0, 0.3, std::numbers::pi / 4}) {
            const family::Ansatz p = rho_sl_as_ansatz(g, th);
            EXPECT_NEAR(p.x + p.y + p.a + p.b + p.gamma, 1.0, 1e-15);
            ComplexMatrix m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = p.x + p.gamma / 2;
            m(0, 3) = m(3, 0) = p.gamma / 2;
            m(1, 1) = p.a;
            m(2, 2) = p.b;
            m(3, 3) = p.y + p.gamma / 2;
            EXPECT_LT(max_abs_diff(build(family::RhoSL{g, th}).rho(), m), 1e-12) << g << " " << th;
        }
    }
}

TEST(build, gtype_and_jstate_endpoints) {
    EXPECT_LT(max_abs_diff(build(family::GType{0.5}).rho(), build(family::GHZ{}).rho()), 1e-14);
    EXPECT_LT(max_abs_diff(build(family::JState{1.0}).rho(), build(family::W{}).rho()), 1e-14);
}

TEST(build, rho_m_is_bell_mixed_with_01) {
    const QuantumState bell = build(family::PureTheta{std::numbers::pi / 4});
    const QuantumState ket01 = QuantumState::from_pure(basis_ket({0, 1}));
    for (double g : {0.1, 0.5, 0.9}) {
        const QuantumState m = mix({{g, bell}, {1 - g, ket01}});
        EXPECT_LT(max_abs_diff(m.rho(), build(family::RhoM{g}).rho()), 1e-15);
    }
}

TEST(build, zstate_negativity_ignores_phase) {
    for (int k : {3, 4, 5}) {
        for (double q : {0.0, 0.25, 0.6}) {
            double lo = INFINITY, hi = -INFINITY;
            for (int j = 0; j < 64; ++j) {
                const double n = negativity(build(family::ZState{k, q, 2 * std::numbers::pi * j / 64}), 0);
                lo = std::min(lo, n);
                hi = std::max(hi, n);
            }
            EXPECT_LE(hi - lo, 1e-10) << k << " " << q;
        }
    }
}

TEST(rho_itot, hits_target_negativity_and_profile) {
    // f(0.3) evaluated by hand: -0.15 + sqrt(0.3 + 0.1125).
    EXPECT_NEAR(itot_concurrence_profile(0.3), -0.15 + std::sqrt(0.4125), 1e-15);
    EXPECT_EQ(itot_concurrence_profile(0.0), 0.0);
    for (double n : {0.05, 0.3, 0.6, 0.9}) {
        const double f = itot_concurrence_profile(n);
        // With a = 0 the negativity condition is linear in b: b = (f^2 - n^2) / (2n).
        const double b0 = (f * f - n * n) / (2 * n);
        const family::Ansatz p = rho_itot_parameters(n, 0.0);
        EXPECT_EQ(p.y, 0.0);
        EXPECT_NEAR(p.b, b0, 1e-9) << n;
        EXPECT_NEAR(p.gamma, f, 1e-12);
        // Exchanging the roles of a and b gives the mirrored solution.
        const family::Ansatz m = rho_itot_parameters(n, b0 + 1e-9);
        EXPECT_NEAR(m.b, 0.0, 1e-6) << n;
        // Above a = 0 the feasible a form one interval starting at the mirrored root.
        int feasible = 0;
        bool closed = false;
        for (int j = 0; j <= 40; ++j) {
            const double a = j == 0 ? 0.0 : b0 + 1e-9 + (1 - f - b0) * (j - 1) / 40.0;
            try {
                const QuantumState s = make_rho_itot(n, a);
                EXPECT_FALSE(closed && j > 1) << n << " " << a;
                ++feasible;
                expect_valid(s);
                EXPECT_NEAR(negativity(s, 0), n, 1e-9) << n << " " << a;
                EXPECT_NEAR(concurrence2(s), f, 1e-9) << n << " " << a;
                EXPECT_GE(concurrence2(s) - negativity(s, 0), -1e-10);
            } catch (const InfeasibleParameters &) {
                if (j > 0) closed = true;
            }
        }
        EXPECT_GE(feasible, 3) << n;
    }
}

TEST(rho_itot, infeasible_is_reported) {
    EXPECT_THROW(make_rho_itot(0.9, 0.5), InfeasibleParameters);
}

TEST(random_pure, unit_purity_and_determinism) {
    Rng a = seeded(1), b = seeded(1);
    for (int n = 0; n < 50; ++n) {
        const QuantumState s = random_pure(3, a);
        EXPECT_NEAR(s.purity(), 1, 1e-12);
        EXPECT_EQ(s.amplitudes(), random_pure(3, b).amplitudes());
    }
}

TEST(random_pure, haar_moment_of_reduced_purity) {
    // Haar average of the reduced purity is (dA + dB) / (dA dB + 1) = 4/5 for one qubit of two.
    Rng rng = seeded(2);
    double sum = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix r = linalg::partial_trace(random_pure(2, rng).rho(), {0}, 2);
        sum += (r * r).trace().real();
    }
    EXPECT_NEAR(sum / n, 0.8, 0.01);
}

TEST(random_mixed2, positive_unit_trace_and_seeded) {
    Rng a = seeded(3), b = seeded(3);
    for (int n = 0; n < 200; ++n) {
        const QuantumState s = random_mixed2(a);
        expect_valid(s);
        EXPECT_EQ(s.rho(), random_mixed2(b).rho());
    }
}

TEST(random_mixed2, mean_purity_matches_ginibre_moment) {
    // Square Ginibre on dimension d: E tr(rho^2) = 2d / (d^2 + 1) = 8/17 for d = 4.
    Rng rng = seeded(6);
    double sum = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += random_mixed2(rng).purity();
    EXPECT_NEAR(sum / n, 8.0 / 17.0, 0.005);
}

TEST(random_mixed2_simplex, valid_seeded_and_unitarily_invariant) {
    Rng a = seeded(7), b = seeded(7);
    ComplexMatrix mean = ComplexMatrix::Zero(4, 4);
    double purity = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const QuantumState s = random_mixed2_simplex(a);
        if (i < 200) {
            expect_valid(s);
            EXPECT_EQ(s.rho(), random_mixed2_simplex(b).rho());
        }
        mean += s.rho();
        purity += s.purity();
    }
    // Unitary invariance forces E rho = I/4; a flat Dirichlet spectrum gives E sum(lambda^2) = 4 * 2/(4*5).
    EXPECT_LT(max_abs_diff(mean / n, linalg::identity(4) / 4.0), 0.01);
    EXPECT_NEAR(purity / n, 0.4, 0.005);
}

TEST(mix, identities_and_errors) {
    Rng rng = seeded(4);
    const QuantumState r = random_mixed2(rng), p = random_pure(2, rng);
    EXPECT_LT(max_abs_diff(mix({{1.0, r}}).rho(), r.rho()), 1e-15);
    const QuantumState m = mix({{0.3, r}, {0.7, p}});
    expect_valid(m);
    EXPECT_THROW(mix({{0.3, r}, {0.6, p}}), std::invalid_argument);
    EXPECT_THROW(mix({{-0.1, r}, {1.1, p}}), std::invalid_argument);
    EXPECT_THROW(mix({{0.5, r}, {0.5, random_pure(3, rng)}}), std::invalid_argument);
}

TEST(random_local_unitary, unitary_and_preserves_negativity) {
    Rng rng = seeded(5);
    for (int k : {1, 2, 3}) {
        const ComplexMatrix u = random_local_unitary(k, rng);
        EXPECT_LT(max_abs_diff(u * u.adjoint(), linalg::identity(u.rows())), 1e-10);
    }
    for (int n = 0; n < 20; ++n) {
        const QuantumState s = random_mixed2(rng);
        const QuantumState t = transform(s, random_local_unitary(2, rng));
        EXPECT_NEAR(negativity(t, 0), negativity(s, 0), 1e-9);
        EXPECT_NEAR(negativity(t, 1), negativity(s, 1), 1e-9);
        const QuantumState pure = random_pure(3, rng);
        EXPECT_TRUE(transform(pure, random_local_unitary(3, rng)).is_pure());
    }
}

TEST(quantum_state, validation) {
    ComplexMatrix bad = ComplexMatrix::Identity(4, 4) * 0.5;
    EXPECT_THROW(QuantumState::from_density(2, bad), std::invalid_argument);
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(QuantumState::from_density(1, neg), std::invalid_argument);
    EXPECT_THROW(QuantumState::from_density(2, ComplexMatrix::Identity(2, 2) * 0.5), InvalidShape);
    EXPECT_THROW(QuantumState::from_pure(ComplexVector::Ones(4)), std::invalid_argument);
    EXPECT_THROW(QuantumState::from_density(1, ComplexMatrix::Identity(2, 2) * 0.5).amplitudes(),
                 std::invalid_argument);
}
