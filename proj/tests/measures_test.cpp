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

#include "sodelab/measures.hpp"

#include <numbers>

#include "gtest/gtest.h"

#include "test_support.hpp"

using namespace sodelab;
using namespace sodelab::testing;

namespace {

/// Von Neumann entropy from a plain eigen solve, natural log.
double entropy_oracle(const ComplexMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    double s = 0;
    for (double v : es.eigenvalues()) s -= v > 1e-15 ? v * std::log(v) : 0;
    return s;
}

/// Wootters concurrence via the non-Hermitian R = rho (sy sy) rho* (sy sy) spectrum.
double wootters_oracle(const ComplexMatrix &rho) {
    const ComplexMatrix yy = linalg::kron(linalg::pauli_y(), linalg::pauli_y());
    const ComplexMatrix r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(r);
    std::vector<double> l;
    for (Complex v : es.eigenvalues()) l.push_back(std::sqrt(std::max(0.0, v.real())));
    std::sort(l.rbegin(), l.rend());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// Three-tangle 4|Det| from Cayley's hyperdeterminant of the pure amplitudes.
double hyperdeterminant_tangle(const QuantumState &s) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s.rho());
    const ComplexVector v = es.eigenvectors().col(7);
    auto c = [&](int i, int j, int k) { return v(4 * i + 2 * j + k); };
    const Complex d1 = c(0, 0, 0) * c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 1) +
                       c(0, 0, 1) * c(0, 0, 1) * c(1, 1, 0) * c(1, 1, 0) +
                       c(0, 1, 0) * c(0, 1, 0) * c(1, 0, 1) * c(1, 0, 1) +
                       c(1, 0, 0) * c(1, 0, 0) * c(0, 1, 1) * c(0, 1, 1);
    const Complex d2 = c(0, 0, 0) * c(1, 1, 1) * c(0, 1, 1) * c(1, 0, 0) +
                       c(0, 0, 0) * c(1, 1, 1) * c(1, 0, 1) * c(0, 1, 0) +
                       c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 0) * c(0, 0, 1) +
                       c(0, 1, 1) * c(1, 0, 0) * c(1, 0, 1) * c(0, 1, 0) +
                       c(0, 1, 1) * c(1, 0, 0) * c(1, 1, 0) * c(0, 0, 1) +
                       c(1, 0, 1) * c(0, 1, 0) * c(1, 1, 0) * c(0, 0, 1);
    const Complex d3 = c(0, 0, 0) * c(1, 1, 0) * c(1, 0, 1) * c(0, 1, 1) +
                       c(1, 1, 1) * c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 0);
    return 4 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

}  // namespace

TEST(negativity, examples) {
    EXPECT_NEAR(negativity(build(family::PureTheta{std::numbers::pi / 4}), 0), 1, 1e-12);
    EXPECT_NEAR(negativity(build(family::WK{4}), 0), std::sqrt(3.0) / 2, 1e-12);
    for (int k : {2, 3, 5, 7}) {
        EXPECT_NEAR(negativity(build(family::WK{k}), 0), 2 * std::sqrt(k - 1.0) / k, 1e-12);
        EXPECT_NEAR(negativity(build(family::WK{k}), k - 1), 2 * std::sqrt(k - 1.0) / k, 1e-12);
    }
    EXPECT_EQ(negativity(QuantumState::from_pure(basis_ket({0, 0, 0})), 1), 0);
    EXPECT_THROW(negativity(build(family::GHZ{}), 3), std::out_of_range);
}

TEST(negativity, matches_loop_oracle_on_random_states) {
    Rng rng = seeded(31);
    for (int n = 0; n < 50; ++n) {
        const QuantumState m = random_mixed2(rng);
        EXPECT_NEAR(negativity(m, 0), loop_negativity(m.rho(), 0, 2), 1e-12);
        const QuantumState p = random_pure(3, rng);
        for (int q = 0; q < 3; ++q) EXPECT_NEAR(negativity(p, q), loop_negativity(p.rho(), q, 3), 1e-12);
    }
}

TEST(negativity_pure_schmidt, agrees_with_partial_transpose) {
    const int cut0[] = {0};
    for (double th : {0.0, 0.2, 0.6}) {
        EXPECT_NEAR(negativity_pure_schmidt(build(family::PureTheta{th}), cut0), std::sin(2 * th), 1e-12);
    }
    EXPECT_NEAR(negativity_pure_schmidt(build(family::GHZ{}), cut0), 1, 1e-12);
    EXPECT_NEAR(negativity_pure_schmidt(QuantumState::from_pure(basis_ket({0, 1})), cut0), 0, 1e-12);
    Rng rng = seeded(32);
    for (int n = 0; n < 30; ++n) {
        const QuantumState p = random_pure(3, rng);
        for (int q = 0; q < 3; ++q) {
            const int cut[] = {q};
            EXPECT_NEAR(negativity_pure_schmidt(p, cut), negativity(p, q), 1e-9);
            EXPECT_NEAR(pure_bipartite_concurrence(p, cut), negativity(p, q), 1e-9);
        }
    }
    EXPECT_THROW(negativity_pure_schmidt(random_mixed2(rng), cut0), std::invalid_argument);
}

TEST(concurrence2, examples_and_oracle) {
    EXPECT_NEAR(concurrence2(build(family::PureTheta{std::numbers::pi / 4})), 1, 1e-12);
    for (double g : {0.1, 0.4, 0.8}) {
        EXPECT_NEAR(concurrence2(build(family::RhoM{g})), g, 1e-12);
        const double a = (1 - g) / 2;
        const QuantumState ck = build(family::RhoC{g, a, a});
        EXPECT_NEAR(concurrence2(ck), negativity(ck, 0), 1e-12);
    }
    Rng rng = seeded(33);
    for (int n = 0; n < 200; ++n) {
        const QuantumState m = random_mixed2(rng);
        EXPECT_NEAR(concurrence2(m), wootters_oracle(m.rho()), 1e-9);
        EXPECT_GE(concurrence2(m) - negativity(m, 0), -1e-10);
    }
    EXPECT_THROW(concurrence2(build(family::GHZ{})), std::invalid_argument);
}

TEST(pure_bipartite_concurrence, examples) {
    const int cut[] = {0};
    EXPECT_NEAR(pure_bipartite_concurrence(build(family::PureTheta{0.3}), cut), std::sin(0.6), 1e-12);
    // Reduced purity of W_3 on one qubit is 5/9.
    EXPECT_NEAR(pure_bipartite_concurrence(build(family::W{}), cut), std::sqrt(2 * (1 - 5.0 / 9)), 1e-12);
    EXPECT_NEAR(pure_bipartite_concurrence(build(family::W{}), cut), 2 * std::sqrt(2.0) / 3, 1e-12);
    EXPECT_NEAR(pure_bipartite_concurrence(QuantumState::from_pure(basis_ket({1, 0, 1})), cut), 0, 1e-12);
}

TEST(linear_entropy, examples) {
    EXPECT_NEAR(linear_entropy(build(family::PureTheta{0.4})), 0, 1e-12);
    EXPECT_NEAR(linear_entropy(QuantumState::from_density(2, linalg::identity(4) / 4.0)), 1, 1e-12);
    for (double g : {0.2, 0.5, 0.9}) {
        const ComplexMatrix r = build(family::RhoM{g}).rho();
        EXPECT_NEAR(linear_entropy(build(family::RhoM{g})), 4.0 / 3 * (1 - (r * r).trace().real()), 1e-12);
        // By hand: eigenvalues of rho_m are gamma and 1 - gamma.
        EXPECT_NEAR(linear_entropy(build(family::RhoM{g})), 4.0 / 3 * (1 - g * g - (1 - g) * (1 - g)), 1e-12);
    }
    EXPECT_THROW(linear_entropy(build(family::GHZ{})), std::invalid_argument);
}

TEST(mutual_information, examples_and_oracle) {
    const int a[] = {0};
    EXPECT_NEAR(mutual_information(QuantumState::from_pure(basis_ket({0, 1})), a), 0, 1e-12);
    EXPECT_NEAR(mutual_information(build(family::PureTheta{std::numbers::pi / 4}), a), 2 * std::log(2.0), 1e-12);
    for (double g : {0.1, 0.5, 0.95}) {
        const ComplexMatrix r = build(family::RhoM{g}).rho();
        const double expect = entropy_oracle(linalg::partial_trace(r, {0}, 2)) +
                              entropy_oracle(linalg::partial_trace(r, {1}, 2)) - entropy_oracle(r);
        EXPECT_NEAR(mutual_information(build(family::RhoM{g}), a), expect, 1e-12);
    }
    Rng rng = seeded(34);
    for (int n = 0; n < 20; ++n) EXPECT_GE(mutual_information(random_mixed2(rng), a), -1e-12);
    const int trivial[] = {0, 1};
    EXPECT_THROW(mutual_information(random_mixed2(rng), trivial), std::invalid_argument);
    EXPECT_THROW(mutual_information(random_mixed2(rng), std::span<const int>{}), std::invalid_argument);
}

TEST(invariants3, ghz_and_w) {
    const InvariantSet g = invariants3(build(family::GHZ{}));
    EXPECT_NEAR(g.I1, 0.5, 1e-12);
    EXPECT_NEAR(g.I2, 0.5, 1e-12);
    EXPECT_NEAR(g.I3, 0.5, 1e-12);
    EXPECT_NEAR(g.I4, 0.25, 1e-12);
    EXPECT_NEAR(g.tau, 1, 1e-12);
    EXPECT_NEAR(g.Theta, -0.25, 1e-12);

    const InvariantSet w = invariants3(build(family::W{}));
    EXPECT_NEAR(w.tau, 0, 1e-12);
    EXPECT_NEAR(w.I4, 2.0 / 9, 1e-12);
    EXPECT_NEAR(w.N1, 2 * std::sqrt(2.0) / 3, 1e-12);
}

TEST(invariants3, g_and_j_families) {
    for (double a : {0.1, 0.3, 0.5, 0.8}) {
        const InvariantSet inv = invariants3(build(family::GType{a}));
        EXPECT_NEAR(inv.N1, 2 * std::sqrt((1 - a) * a), 1e-12);
        EXPECT_NEAR(inv.tau, 4 * (1 - a) * a, 1e-12);
        EXPECT_NEAR(inv.I4, 1 - 3 * a + 3 * a * a, 1e-12);
    }
    for (double b : {0.1, 0.4, 0.7, 1.0}) {
        const InvariantSet inv = invariants3(build(family::JState{b}));
        EXPECT_NEAR(inv.N1, 2.0 / 3 * std::sqrt(2.0) * std::sqrt(b * (3 - 2 * b)), 1e-12);
        EXPECT_NEAR(inv.tau, 16 * std::sqrt(1 - b) * std::pow(b, 1.5) / (3 * std::sqrt(3.0)), 1e-12);
        EXPECT_NEAR(inv.I4, 1 - 3 * b + 4 * b * b - 16 * b * b * b / 9, 1e-12);
    }
}

TEST(invariants3, upsilon_family) {
    Rng rng = seeded(35);
    std::normal_distribution<double> nd;
    for (int n = 0; n < 30; ++n) {
        double c1 = nd(rng), c2 = nd(rng), c3 = nd(rng);
        const double norm = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
        c1 /= norm, c2 /= norm, c3 /= norm;
        const InvariantSet inv = invariants3(build(family::Upsilon{c1, c2, c3}));
        const double p2 = c2 * c2, p1 = c1 * c1, p3 = c3 * c3;
        EXPECT_NEAR(inv.N1, 2.0 / 3 * std::sqrt(2 * p2 * p2 + 9 * p1 * p3 + 6 * p2 * p3), 1e-12);
        EXPECT_NEAR(inv.tau, 4.0 / 9 * std::abs(c3 * (4 * std::sqrt(3.0) * p2 * c2 + 9 * p1 * c3)), 1e-12);
        const double i4 = p1 * p1 * p1 + 3 * p1 * p1 * p2 + 2 * p2 * p2 * p2 / 9 + p2 * p2 * p3 + p3 * p3 * p3 +
                          2.0 / 3 * p1 * p2 * c2 * (3 * c2 + std::sqrt(3.0) * c3);
        EXPECT_NEAR(inv.I4, i4, 1e-12);
    }
}

TEST(invariants3, lambda_family) {
    for (auto [c0, c1, c6] : {std::tuple{0.6, 0.0, 0.8}, {0.3, 0.5, std::sqrt(0.66)}, {0.7, 0.1, std::sqrt(0.5)}}) {
        const InvariantSet inv = invariants3(build(family::Lambda{c0, c1, c6}));
        EXPECT_NEAR(inv.N1, 2 * std::sqrt((c0 * c0 + c1 * c1) * c6 * c6), 1e-12);
        EXPECT_NEAR(inv.tau, 4 * c1 * c1 * c6 * c6, 1e-12);
        EXPECT_NEAR(inv.tau, hyperdeterminant_tangle(build(family::Lambda{c0, c1, c6})), 1e-12);
        EXPECT_NEAR(inv.I3, 1 - 2 * c1 * c1 * c6 * c6, 1e-12);
        EXPECT_NEAR(inv.I1, inv.I2, 1e-12);
    }
}

TEST(invariants3, structural_relations_on_random_states) {
    Rng rng = seeded(36);
    for (int n = 0; n < 200; ++n) {
        const QuantumState s = random_pure(3, rng);
        const InvariantSet inv = invariants3(s);
        EXPECT_NEAR(inv.I1, 1 - inv.N1 * inv.N1 / 2, 1e-9);
        EXPECT_NEAR(inv.I2, 1 - inv.N2 * inv.N2 / 2, 1e-9);
        EXPECT_NEAR(inv.I3, 1 - inv.N3 * inv.N3 / 2, 1e-9);
        EXPECT_NEAR(inv.I5, inv.tau * inv.tau, 1e-8);
        EXPECT_NEAR(inv.tau, hyperdeterminant_tangle(s), 1e-9);
        EXPECT_NEAR(inv.Theta, (inv.I2 - inv.I3) * (inv.I2 - inv.I3) - inv.tau * inv.tau / 4, 1e-12);
        EXPECT_NEAR(inv.M, (5 - 3 * inv.I1 - 3 * inv.I2 - 3 * inv.I3 + 4 * inv.I4) / 3, 1e-12);
        const double n1 = inv.N1 * inv.N1, n2 = inv.N2 * inv.N2, n3 = inv.N3 * inv.N3;
        const double t12 = inv.C12 * inv.C12, t13 = inv.C13 * inv.C13, t23 = inv.C23 * inv.C23;
        EXPECT_NEAR(inv.tau, std::abs(n1 - t12 - t13), 1e-8);
        EXPECT_NEAR(inv.tau, std::abs(n2 - t12 - t23), 1e-8);
        EXPECT_NEAR(inv.tau, std::abs(n3 - t13 - t23), 1e-8);
        // I4 does not depend on which pair is used.
        EXPECT_NEAR(invariant_i4(s, 0, 1), inv.I4, 1e-8);
        EXPECT_NEAR(invariant_i4(s, 0, 2), inv.I4, 1e-8);
        EXPECT_NEAR(invariant_i4(s, 1, 2), inv.I4, 1e-8);
    }
}

TEST(invariants3, rejects_mixed_or_wrong_size) {
    Rng rng = seeded(37);
    EXPECT_THROW(invariants3(random_pure(2, rng)), std::invalid_argument);
    EXPECT_THROW(invariants3(QuantumState::from_density(3, linalg::identity(8) / 8.0)), std::invalid_argument);
}

TEST(measures, local_unitary_invariance) {
    Rng rng = seeded(38);
    for (int n = 0; n < 20; ++n) {
        const QuantumState s = random_pure(3, rng);
        const QuantumState t = transform(s, random_local_unitary(3, rng));
        const InvariantSet a = invariants3(s), b = invariants3(t);
        for (auto m : {&InvariantSet::I1, &InvariantSet::I2, &InvariantSet::I3, &InvariantSet::I4, &InvariantSet::I5,
                       &InvariantSet::tau, &InvariantSet::C12, &InvariantSet::C13, &InvariantSet::C23,
                       &InvariantSet::Theta, &InvariantSet::M}) {
            EXPECT_NEAR(a.*m, b.*m, 1e-8);
        }
        const QuantumState m = random_mixed2(rng);
        const QuantumState mt = transform(m, random_local_unitary(2, rng));
        EXPECT_NEAR(concurrence2(m), concurrence2(mt), 1e-8);
        EXPECT_NEAR(linear_entropy(m), linear_entropy(mt), 1e-8);
    }
}
