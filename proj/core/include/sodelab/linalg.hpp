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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sodelab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Spectrum of a Hermitian matrix: ascending eigenvalues, eigenvectors as columns.
struct EigenSystem {
    RealVector values;
    ComplexMatrix vectors;
};

namespace linalg {

/// Relative tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

ComplexMatrix identity(Eigen::Index dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Number of qubits k such that dim = 2^k; throws InvalidShape otherwise.
int qubit_count(Eigen::Index dim);

/// Bit mask selecting the tensor factor of `qubit` in a k-qubit basis index.
/// Qubit 0 is the leftmost (most significant) factor.
constexpr Eigen::Index qubit_mask(int qubit, int k) { return Eigen::Index{1} << (k - 1 - qubit); }

ComplexMatrix partial_transpose(const ComplexMatrix &rho, int qubit, int k);

/// Reduced operator on the qubits in `keep` (sorted, duplicates removed).
/// The result orders the kept qubits by ascending index.
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const int> keep, int k);
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::initializer_list<int> keep, int k);

/// Applies a 2x2 operator on one qubit from the left: (I ⊗ op ⊗ I) * m.
ComplexMatrix apply_left(const ComplexMatrix &op, const ComplexMatrix &m, int qubit, int k);

/// op_qubit * m * op_qubit^dagger without forming the full operator.
ComplexMatrix conjugate_local(const ComplexMatrix &op, const ComplexMatrix &m, int qubit, int k);

/// max |a - a^dagger| relative to max |a|.
double hermiticity_defect(const ComplexMatrix &a);
bool is_hermitian(const ComplexMatrix &a, double rel_tol = kHermitianTolerance);

EigenSystem hermitian_eigendecompose(const ComplexMatrix &a);
RealVector hermitian_eigenvalues(const ComplexMatrix &a);

/// Sum of absolute eigenvalues; defined here for Hermitian input only.
double trace_norm(const ComplexMatrix &a);

/// Haar-random unitary of the given dimension (QR of a Ginibre matrix, phase-fixed).
template <typename Rng>
ComplexMatrix haar_unitary(Eigen::Index dim, Rng &rng);

}  // namespace linalg
}  // namespace sodelab

#include "sodelab/linalg_random.inl"
