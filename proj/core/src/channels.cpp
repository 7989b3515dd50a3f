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

#include "sodelab/channels.hpp"

#include <cmath>
#include <string>

namespace sodelab {

std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::depolarizing:
            return "depolarizing";
        case ChannelKind::dephasing:
            return "dephasing";
    }
    return "unknown";
}

ChannelKind parse_channel(std::string_view name) {
    if (name == "depolarizing") return ChannelKind::depolarizing;
    if (name == "dephasing") return ChannelKind::dephasing;
    throw std::invalid_argument("unknown channel '" + std::string(name) + "' (expected depolarizing|dephasing)");
}

std::vector<ComplexMatrix> kraus_operators(ChannelKind kind, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("channel time must be non-negative (got " + std::to_string(t) + ")");
    }
    // 1 - s with s = exp(-t), kept accurate for tiny t.
    const double p = -std::expm1(-t);
    switch (kind) {
        case ChannelKind::depolarizing: {
            const double pp = 0.75 * p;
            const double w = std::sqrt(pp / 3.0);
            return {std::sqrt(1.0 - pp) * linalg::identity(2), w * linalg::pauli_x(), w * linalg::pauli_y(),
                    w * linalg::pauli_z()};
        }
        case ChannelKind::dephasing:
            return {std::sqrt(1.0 - p / 2.0) * linalg::identity(2), std::sqrt(p / 2.0) * linalg::pauli_z()};
    }
    throw std::invalid_argument("unknown channel kind");
}

QuantumState apply_channel(const QuantumState &state, double t, ChannelKind kind) {
    const auto kraus = kraus_operators(kind, t);
    if (t == 0.0) {
        return state;
    }
    const int k = state.qubits();
    ComplexMatrix rho = state.rho();
    for (int q = 0; q < k; ++q) {
        ComplexMatrix next = ComplexMatrix::Zero(rho.rows(), rho.cols());
        for (const auto &e : kraus) {
            next += linalg::conjugate_local(e, rho, q, k);
        }
        rho = std::move(next);
    }
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return QuantumState::trusted(k, std::move(rho));
}

ComplexMatrix generator(const QuantumState &state, ChannelKind kind) {
    const int k = state.qubits();
    const ComplexMatrix &rho = state.rho();
    const Eigen::Index dim = rho.rows();
    ComplexMatrix sigma = ComplexMatrix::Zero(dim, dim);
    for (int q = 0; q < k; ++q) {
        const Eigen::Index mask = linalg::qubit_mask(q, k);
        for (Eigen::Index c = 0; c < dim; ++c) {
            for (Eigen::Index r = 0; r < dim; ++r) {
                const bool same = ((r ^ c) & mask) == 0;
                switch (kind) {
                    case ChannelKind::depolarizing:
                        // Qubit q replaced by I/2 (tensored with tr_q rho), minus rho.
                        if (same) {
                            const Eigen::Index r0 = r & ~mask;
                            const Eigen::Index c0 = c & ~mask;
                            sigma(r, c) += 0.5 * (rho(r0, c0) + rho(r0 | mask, c0 | mask)) - rho(r, c);
                        } else {
                            sigma(r, c) -= rho(r, c);
                        }
                        break;
                    case ChannelKind::dephasing:
                        // (Z rho Z - rho) / 2 only touches coherences in qubit q.
                        if (!same) {
                            sigma(r, c) -= rho(r, c);
                        }
                        break;
                }
            }
        }
    }
    return sigma;
}

}  // namespace sodelab
