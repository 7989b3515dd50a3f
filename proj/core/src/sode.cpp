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

#include "sodelab/sode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "sodelab/errors.hpp"

namespace sodelab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kRangeSlack = 1e-12;
// Allowed overshoot of eta below zero before it is treated as a solver failure.
constexpr double kNegativeEtaSlack = 1e-9;

void require_negativity(const char *op, double n) {
    if (!(n >= -kRangeSlack && n <= 1.0 + kRangeSlack)) {
        std::ostringstream os;
        os << op << ": negativity must lie in [0, 1] (got " << n << ")";
        throw std::invalid_argument(os.str());
    }
}

void require_positive_negativity(const char *op, double n) {
    require_negativity(op, n);
    if (n <= 0.0) {
        std::ostringstream os;
        os << op << ": closed form is singular at zero negativity (got " << n << ")";
        throw SingularInput(os.str());
    }
}

}  // namespace

double zero_tolerance(double spectral_radius) { return 1e-9 * std::max(1.0, spectral_radius); }

SodeReport sode_perturbative(const QuantumState &state, int qubit, ChannelKind kind) {
    const int k = state.qubits();
    if (qubit < 0 || qubit >= k) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(k) +
                                " qubits");
    }
    const ComplexMatrix rho_t = linalg::partial_transpose(state.rho(), qubit, k);
    const ComplexMatrix sigma_t = linalg::partial_transpose(generator(state, kind), qubit, k);
    const EigenSystem es = linalg::hermitian_eigendecompose(rho_t);
    const double eps0 = zero_tolerance(es.values.cwiseAbs().maxCoeff());

    SodeReport rep;
    std::vector<Eigen::Index> zero_cols;
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
        const double lambda = es.values(j);
        if (lambda < -eps0) {
            const auto v = es.vectors.col(j);
            rep.eta_minus += 2.0 * (v.adjoint() * sigma_t * v).value().real();
            rep.negativity -= 2.0 * lambda;
            ++rep.neg_dim;
        } else if (lambda <= eps0) {
            zero_cols.push_back(j);
        }
    }
    rep.zero_dim = static_cast<int>(zero_cols.size());
    if (!zero_cols.empty()) {
        ComplexMatrix basis(es.vectors.rows(), rep.zero_dim);
        for (int m = 0; m < rep.zero_dim; ++m) {
            basis.col(m) = es.vectors.col(zero_cols[m]);
        }
        ComplexMatrix sigma0 = basis.adjoint() * sigma_t * basis;
        sigma0 = (sigma0 + sigma0.adjoint()).eval() * 0.5;
        rep.eta_zero = std::max(0.0, linalg::trace_norm(sigma0) - sigma0.trace().real());
    }
    rep.eta = rep.eta_minus - rep.eta_zero;
    if (rep.eta < 0.0) {
        if (rep.eta < -kNegativeEtaSlack) {
            std::ostringstream os;
            os << "sode_perturbative: negative speed " << rep.eta << " (eta_minus " << rep.eta_minus << ", eta_zero "
               << rep.eta_zero << ")";
            throw std::logic_error(os.str());
        }
        rep.eta = 0.0;
    }
    const Robustness rb = robustness(rep.negativity, rep.eta);
    rep.t_star = rb.t_star;
    rep.robustness = rb.r;
    return rep;
}

double sode_finite_difference(const QuantumState &state, int qubit, ChannelKind kind, double dt,
                              SpeedMeasure measure) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("sode_finite_difference: dt must be positive");
    }
    if (qubit < 0 || qubit >= state.qubits()) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range");
    }
    if (measure == SpeedMeasure::concurrence2 && state.qubits() != 2) {
        throw std::invalid_argument("sode_finite_difference: concurrence speed requires a two-qubit state");
    }
    const QuantumState later = apply_channel(state, dt, kind);
    auto m = [&](const QuantumState &s) {
        return measure == SpeedMeasure::negativity ? negativity(s, qubit) : concurrence2(s);
    };
    return (m(state) - m(later)) / dt;
}

double eta_pure2(double n) {
    require_negativity("eta_pure2", n);
    return 2.0 * n + 1.0;
}

EtaBounds eta_bounds2(double n) {
    require_negativity("eta_bounds2", n);
    n = std::clamp(n, 0.0, 1.0);
    const double r = std::sqrt(2.0 * n * (n + 1.0));
    return {(n * n + r) / (1.0 + 2.0 * n - r), 2.0 * n + 1.0};
}

double min_negativity_for_concurrence(double c) { return std::hypot(c, 1.0 - c) + c - 1.0; }

double eta_rho_c(double n, double c) {
    if (!(n > 0.0 && n <= c + kRangeSlack && c <= 1.0 + kRangeSlack) ||
        n < min_negativity_for_concurrence(c) - 1e-10) {
        std::ostringstream os;
        os << "eta_rho_c: (negativity " << n << ", concurrence " << c << ") is outside the RhoC family";
        throw InfeasibleParameters(os.str());
    }
    const double den = n * n - c * c + 2.0 * c * (1.0 + n);
    return 2.0 * n + 1.0 - 2.0 * (1.0 - c) * (c - n) * (1.0 + n) / den;
}

double eta_sym3(double n, double tau, double i4) {
    require_positive_negativity("eta_sym3", n);
    const double n2 = n * n;
    return (32.0 - 32.0 * i4 - 12.0 * n2 + 84.0 * n2 * n + 69.0 * n2 * n2 + 3.0 * tau * tau) / (24.0 * n2 * (n + 1.0));
}

double eta_gen3(const InvariantSet &inv) {
    const double n = inv.N1;
    require_positive_negativity("eta_gen3", n);
    const double n2 = n * n;
    double eta = (-16.0 - 12.0 * inv.Theta - 32.0 * inv.I4 + 36.0 * n2 + 84.0 * n2 * n + 57.0 * n2 * n2 +
                  12.0 * (inv.I2 + inv.I3) * (2.0 - n2)) /
                 (24.0 * n2 * (n + 1.0));
    if (inv.Theta > zero_tolerance(1.0)) {
        eta -= (std::sqrt(inv.M * inv.M + n2 * inv.Theta) - inv.M) / n2;
    }
    return eta;
}

double eta_ghz_k(int k, double n) {
    if (k < 3) {
        throw std::invalid_argument("eta_ghz_k: requires k >= 3 (got " + std::to_string(k) + ")");
    }
    require_negativity("eta_ghz_k", n);
    return k * n + 0.5;
}

double eta_w_k(int k) {
    if (k < 2) {
        throw std::invalid_argument("eta_w_k: requires k >= 2 (got " + std::to_string(k) + ")");
    }
    const double kk = k;
    return ((kk + 2.0) * std::sqrt(kk - 1.0) + 2.0 * (kk - 1.0) - (kk - 2.0) * std::sqrt(kk - 2.0)) / kk;
}

double eta_dephasing_ghz_k(int k, double n) {
    if (k < 2) {
        throw std::invalid_argument("eta_dephasing_ghz_k: requires k >= 2 (got " + std::to_string(k) + ")");
    }
    require_negativity("eta_dephasing_ghz_k", n);
    return k * n;
}

Robustness robustness(double n, double eta) {
    if (n <= 0.0) {
        return {0.0, 0.0};
    }
    if (eta <= 0.0) {
        return {std::numeric_limits<double>::infinity(), 1.0};
    }
    const double t = n / eta;
    return {t, -std::expm1(-t)};
}

double delta_eta_phase(int k, double q, std::span<const double> phi_grid, ChannelKind kind) {
    if (phi_grid.empty()) {
        throw std::invalid_argument("delta_eta_phase: phase grid is empty");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double phi : phi_grid) {
        const double eta = sode_perturbative(build(family::ZState{k, q, phi}), 0, kind).eta;
        lo = std::min(lo, eta);
        hi = std::max(hi, eta);
    }
    return hi - lo;
}

double evaluate(const EtaFormula &f) {
    using namespace formula;
    return std::visit(overloaded{
                          [](const Pure2 &p) { return eta_pure2(p.n); },
                          [](const Bounds2 &p) {
                              const EtaBounds b = eta_bounds2(p.n);
                              return p.upper ? b.upper : b.lower;
                          },
                          [](const formula::RhoC &p) { return eta_rho_c(p.n, p.c); },
                          [](const G3 &p) {
                              require_negativity("G3", p.n);
                              return 3.0 * p.n + 0.5;
                          },
                          [](const J3 &p) {
                              require_negativity("J3", p.n);
                              return 2.5 * p.n + 1.0;
                          },
                          [](const Sym3 &p) { return eta_sym3(p.n, p.tau, p.i4); },
                          [](const Gen3 &p) { return eta_gen3(p.inv); },
                          [](const GhzK &p) { return eta_ghz_k(p.k, p.n); },
                          [](const formula::WK &p) { return eta_w_k(p.k); },
                          [](const DephGhzK &p) { return eta_dephasing_ghz_k(p.k, p.n); },
                      },
                      f);
}

}  // namespace sodelab
