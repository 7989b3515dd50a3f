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

#include "sodelab/linalg.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "sodelab/errors.hpp"

namespace sodelab::linalg {

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

int qubit_count(Eigen::Index dim) {
    if (dim < 1 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
        throw InvalidShape("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

namespace {

void check_layout(const ComplexMatrix &rho, int k) {
    if (k < 1 || k > 30) {
        throw InvalidShape("qubit count " + std::to_string(k) + " out of range");
    }
    if (rho.rows() != rho.cols() || rho.rows() != (Eigen::Index{1} << k)) {
        throw InvalidShape("matrix of shape " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                           " is not a " + std::to_string(k) + "-qubit operator");
    }
}

void check_qubit(int qubit, int k) {
    if (qubit < 0 || qubit >= k) {
        throw InvalidShape("qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(k) +
                           " qubits");
    }
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix &rho, int qubit, int k) {
    check_layout(rho, k);
    check_qubit(qubit, k);
    const Eigen::Index mask = qubit_mask(qubit, k);
    const Eigen::Index dim = rho.rows();
    ComplexMatrix out(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            Eigen::Index r2 = (r & ~mask) | (c & mask);
            Eigen::Index c2 = (c & ~mask) | (r & mask);
            out(r2, c2) = rho(r, c);
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const int> keep, int k) {
    check_layout(rho, k);
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    for (int q : kept) {
        if (q < 0 || q >= k) {
            throw std::invalid_argument("partial_trace: qubit " + std::to_string(q) + " out of range for " +
                                        std::to_string(k) + " qubits");
        }
    }
    std::vector<int> traced;
    for (int q = 0; q < k; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }

    // Full-register offsets for every assignment of the kept / traced bits.
    auto offsets = [k](const std::vector<int> &qubits) {
        const std::size_t n = std::size_t{1} << qubits.size();
        std::vector<Eigen::Index> off(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t b = 0; b < qubits.size(); ++b) {
                if (v & (std::size_t{1} << (qubits.size() - 1 - b))) {
                    off[v] |= qubit_mask(qubits[b], k);
                }
            }
        }
        return off;
    };
    const auto keep_off = offsets(kept);
    const auto trace_off = offsets(traced);

    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index c = 0; c < dk; ++c) {
        for (Eigen::Index r = 0; r < dk; ++r) {
            Complex acc = 0;
            for (Eigen::Index t : trace_off) {
                acc += rho(keep_off[r] | t, keep_off[c] | t);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::initializer_list<int> keep, int k) {
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()), k);
}

ComplexMatrix apply_left(const ComplexMatrix &op, const ComplexMatrix &m, int qubit, int k) {
    check_qubit(qubit, k);
    if (op.rows() != 2 || op.cols() != 2 || m.rows() != (Eigen::Index{1} << k)) {
        throw InvalidShape("apply_left: operand shapes do not match");
    }
    const Eigen::Index mask = qubit_mask(qubit, k);
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index r0 = 0; r0 < m.rows(); ++r0) {
        if (r0 & mask) {
            continue;
        }
        const Eigen::Index r1 = r0 | mask;
        out.row(r0) = op(0, 0) * m.row(r0) + op(0, 1) * m.row(r1);
        out.row(r1) = op(1, 0) * m.row(r0) + op(1, 1) * m.row(r1);
    }
    return out;
}

ComplexMatrix conjugate_local(const ComplexMatrix &op, const ComplexMatrix &m, int qubit, int k) {
    ComplexMatrix left = apply_left(op, m, qubit, k);
    const Eigen::Index mask = qubit_mask(qubit, k);
    ComplexMatrix out(left.rows(), left.cols());
    for (Eigen::Index c0 = 0; c0 < left.cols(); ++c0) {
        if (c0 & mask) {
            continue;
        }
        const Eigen::Index c1 = c0 | mask;
        out.col(c0) = left.col(c0) * std::conj(op(0, 0)) + left.col(c1) * std::conj(op(0, 1));
        out.col(c1) = left.col(c0) * std::conj(op(1, 0)) + left.col(c1) * std::conj(op(1, 1));
    }
    return out;
}

double hermiticity_defect(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw InvalidShape("hermiticity check on non-square matrix");
    }
    const double scale = a.cwiseAbs().maxCoeff();
    const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return 0.0;
    }
    return defect / scale;
}

bool is_hermitian(const ComplexMatrix &a, double rel_tol) {
    return a.rows() == a.cols() && hermiticity_defect(a) <= rel_tol;
}

namespace {

ComplexMatrix checked_hermitian_part(const ComplexMatrix &a, const char *op) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw InvalidShape(std::string(op) + ": matrix must be square and non-empty");
    }
    const double defect = hermiticity_defect(a);
    if (defect > kHermitianTolerance) {
        throw std::invalid_argument(std::string(op) + ": matrix is not Hermitian (relative defect " +
                                    std::to_string(defect) + ")");
    }
    return (a + a.adjoint()) * 0.5;
}

}  // namespace

EigenSystem hermitian_eigendecompose(const ComplexMatrix &a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(checked_hermitian_part(a, "hermitian_eigendecompose"));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigendecompose: solver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix &a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(checked_hermitian_part(a, "hermitian_eigenvalues"),
                                                         Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigenvalues: solver did not converge");
    }
    return solver.eigenvalues();
}

double trace_norm(const ComplexMatrix &a) { return hermitian_eigenvalues(a).cwiseAbs().sum(); }

}  // namespace sodelab::linalg
