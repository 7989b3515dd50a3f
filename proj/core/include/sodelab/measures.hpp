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

#pragma once

#include <span>
#include <vector>

#include "sodelab/states.hpp"

namespace sodelab {

/// Five local-unitary invariants of a three-qubit pure state together with the
/// bipartite quantities they are built from. Qubits are labelled 1..3 here.
struct InvariantSet {
    double I1 = 0, I2 = 0, I3 = 0, I4 = 0, I5 = 0;
    double tau = 0;
    double N1 = 0, N2 = 0, N3 = 0;
    double C12 = 0, C13 = 0, C23 = 0;
    double Theta = 0;
    double M = 0;
};

/// 2 * |sum of negative eigenvalues| of rho^{T_qubit}.
double negativity(const QuantumState &state, int qubit);
double negativity(const ComplexMatrix &rho, int qubit, int k);

/// (sum of Schmidt coefficients)^2 - 1 across the cut `partition` | rest.
double negativity_pure_schmidt(const QuantumState &state, std::span<const int> partition);

/// Wootters concurrence of a two-qubit state.
double concurrence2(const QuantumState &state);
double concurrence2(const ComplexMatrix &rho);

/// sqrt(2 (1 - tr rho_A^2)) for a pure state across partition | rest.
double pure_bipartite_concurrence(const QuantumState &state, std::span<const int> partition);

/// (4/3)(1 - tr rho^2), two qubits only.
double linear_entropy(const QuantumState &state);

/// Von Neumann entropy in nats; eigenvalues in [-1e-12, 0) count as zero.
double von_neumann_entropy(const ComplexMatrix &rho);

/// S(rho_A) + S(rho_B) - S(rho) for A = partition.
double mutual_information(const QuantumState &state, std::span<const int> partition);

/// 3 tr[(rho_i ⊗ rho_j) rho_ij] - tr rho_i^3 - tr rho_j^3 for qubits i < j (0-based).
double invariant_i4(const QuantumState &state, int i, int j);

/// Full invariant set of a pure three-qubit state. I4 uses qubits (2,3).
InvariantSet invariants3(const QuantumState &state);

}  // namespace sodelab
