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

#include <algorithm>
#include <cmath>
#include <string>

#include "sodelab/errors.hpp"

namespace sodelab {

namespace {

void check_qubit(const QuantumState &state, int qubit) {
    if (qubit < 0 || qubit >= state.qubits()) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                                std::to_string(state.qubits()) + " qubits");
    }
}

void require_pure(const QuantumState &state, const char *op) {
    if (!state.is_pure()) {
        throw std::invalid_argument(std::string(op) + ": requires a state constructed as pure");
    }
}

/// Sorted, deduplicated proper subset of the qubits; throws otherwise.
std::vector<int> checked_partition(std::span<const int> partition, int k, const char *op) {
    std::vector<int> a(partition.begin(), partition.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty() || static_cast<int>(a.size()) >= k) {
        throw std::invalid_argument(std::string(op) + ": partition must be a non-empty proper subset of the qubits");
    }
    for (int q : a) {
        if (q < 0 || q >= k) {
            throw std::invalid_argument(std::string(op) + ": qubit " + std::to_string(q) + " out of range");
        }
    }
    return a;
}

std::vector<int> complement(const std::vector<int> &a, int k) {
    std::vector<int> b;
    for (int q = 0; q < k; ++q) {
        if (!std::binary_search(a.begin(), a.end(), q)) b.push_back(q);
    }
    return b;
}

double trace_of_power(const ComplexMatrix &m, int power) {
    ComplexMatrix acc = m;
    for (int i = 1; i < power; ++i) acc = acc * m;
    return acc.trace().real();
}

}  // namespace

double negativity(const ComplexMatrix &rho, int qubit, int k) {
    const RealVector ev = linalg::hermitian_eigenvalues(linalg::partial_transpose(rho, qubit, k));
    double sum = 0.0;
    for (double v : ev) {
        if (v < 0.0) sum -= v;
    }
    return 2.0 * sum;
}

double negativity(const QuantumState &state, int qubit) {
    check_qubit(state, qubit);
    return negativity(state.rho(), qubit, state.qubits());
}

double negativity_pure_schmidt(const QuantumState &state, std::span<const int> partition) {
    require_pure(state, "negativity_pure_schmidt");
    const int k = state.qubits();
    const auto a = checked_partition(partition, k, "negativity_pure_schmidt");
    const auto b = complement(a, k);
    const Eigen::Index da = Eigen::Index{1} << a.size();
    const Eigen::Index db = Eigen::Index{1} << b.size();
    ComplexMatrix m(da, db);
    const ComplexVector &psi = state.amplitudes();
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < db; ++j) {
            Eigen::Index idx = 0;
            for (std::size_t t = 0; t < a.size(); ++t) {
                if (i & (Eigen::Index{1} << (a.size() - 1 - t))) idx |= linalg::qubit_mask(a[t], k);
            }
            for (std::size_t t = 0; t < b.size(); ++t) {
                if (j & (Eigen::Index{1} << (b.size() - 1 - t))) idx |= linalg::qubit_mask(b[t], k);
            }
            m(i, j) = psi(idx);
        }
    }
    const double s = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues().sum();
    return s * s - 1.0;
}

double concurrence2(const ComplexMatrix &rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw std::invalid_argument("concurrence2: requires a two-qubit state");
    }
    // lambda_i are the singular values of sqrt(rho) Y conj(sqrt(rho)), Y = sigma_y ⊗ sigma_y.
    const EigenSystem es = linalg::hermitian_eigendecompose(rho);
    const RealVector roots = es.values.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix sqrt_rho = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
    const ComplexMatrix yy = linalg::kron(linalg::pauli_y(), linalg::pauli_y());
    const ComplexMatrix a = sqrt_rho * yy * sqrt_rho.conjugate();
    RealVector lam = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();  // descending
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double concurrence2(const QuantumState &state) {
    if (state.qubits() != 2) {
        throw std::invalid_argument("concurrence2: requires a two-qubit state (got " +
                                    std::to_string(state.qubits()) + " qubits)");
    }
    return concurrence2(state.rho());
}

double pure_bipartite_concurrence(const QuantumState &state, std::span<const int> partition) {
    require_pure(state, "pure_bipartite_concurrence");
    const auto a = checked_partition(partition, state.qubits(), "pure_bipartite_concurrence");
    const ComplexMatrix reduced = linalg::partial_trace(state.rho(), a, state.qubits());
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - trace_of_power(reduced, 2))));
}

double linear_entropy(const QuantumState &state) {
    if (state.qubits() != 2) {
        throw std::invalid_argument("linear_entropy: defined here for two qubits only");
    }
    return 4.0 / 3.0 * (1.0 - state.purity());
}

double von_neumann_entropy(const ComplexMatrix &rho) {
    const RealVector ev = linalg::hermitian_eigenvalues(rho);
    double s = 0.0;
    for (double v : ev) {
        if (v < -1e-12) {
            throw std::invalid_argument("von_neumann_entropy: operator has eigenvalue " + std::to_string(v));
        }
        if (v > 0.0) s -= v * std::log(v);
    }
    return s;
}

double mutual_information(const QuantumState &state, std::span<const int> partition) {
    const int k = state.qubits();
    const auto a = checked_partition(partition, k, "mutual_information");
    const auto b = complement(a, k);
    const double sa = von_neumann_entropy(linalg::partial_trace(state.rho(), a, k));
    const double sb = von_neumann_entropy(linalg::partial_trace(state.rho(), b, k));
    return sa + sb - von_neumann_entropy(state.rho());
}

double invariant_i4(const QuantumState &state, int i, int j) {
    if (state.qubits() != 3 || i == j) {
        throw std::invalid_argument("invariant_i4: needs a three-qubit state and two distinct qubits");
    }
    check_qubit(state, i);
    check_qubit(state, j);
    if (i > j) std::swap(i, j);
    const ComplexMatrix ri = linalg::partial_trace(state.rho(), {i}, 3);
    const ComplexMatrix rj = linalg::partial_trace(state.rho(), {j}, 3);
    const ComplexMatrix rij = linalg::partial_trace(state.rho(), {i, j}, 3);
    return 3.0 * (linalg::kron(ri, rj) * rij).trace().real() - trace_of_power(ri, 3) - trace_of_power(rj, 3);
}

InvariantSet invariants3(const QuantumState &state) {
    if (state.qubits() != 3) {
        throw std::invalid_argument("invariants3: requires a three-qubit state");
    }
    require_pure(state, "invariants3");
    const ComplexMatrix &rho = state.rho();
    InvariantSet inv;
    inv.N1 = negativity(state, 0);
    inv.N2 = negativity(state, 1);
    inv.N3 = negativity(state, 2);
    inv.I1 = trace_of_power(linalg::partial_trace(rho, {0}, 3), 2);
    inv.I2 = trace_of_power(linalg::partial_trace(rho, {1}, 3), 2);
    inv.I3 = trace_of_power(linalg::partial_trace(rho, {2}, 3), 2);
    inv.I4 = invariant_i4(state, 1, 2);
    inv.C12 = concurrence2(linalg::partial_trace(rho, {0, 1}, 3));
    inv.C13 = concurrence2(linalg::partial_trace(rho, {0, 2}, 3));
    inv.C23 = concurrence2(linalg::partial_trace(rho, {1, 2}, 3));
    inv.tau = std::abs(inv.N1 * inv.N1 - inv.C12 * inv.C12 - inv.C13 * inv.C13);
    inv.I5 = inv.tau * inv.tau;
    inv.Theta = (inv.I2 - inv.I3) * (inv.I2 - inv.I3) - inv.tau * inv.tau / 4.0;
    inv.M = (5.0 - 3.0 * inv.I1 - 3.0 * inv.I2 - 3.0 * inv.I3 + 4.0 * inv.I4) / 3.0;
    return inv;
}

}  // namespace sodelab
