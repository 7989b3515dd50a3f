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
#include <variant>

#include "sodelab/channels.hpp"
#include "sodelab/measures.hpp"

namespace sodelab {

/// Speed of disentanglement of one qubit against the rest at t = 0.
struct SodeReport {
    double eta = 0;        // eta_minus - eta_zero
    double eta_minus = 0;  // from the negative eigenspace of rho^{T_i}
    double eta_zero = 0;   // from the null space of rho^{T_i}
    double negativity = 0; // 2 |sum of eigenvalues classified negative|
    double t_star = 0;     // negativity / eta
    double robustness = 0; // 1 - exp(-t_star)
    int neg_dim = 0;
    int zero_dim = 0;
};

/// Eigenvalues of rho^{T_i} with |lambda| <= zero_tolerance count as zero.
double zero_tolerance(double spectral_radius);

/// Perturbative speed of disentanglement from the eigensystem of rho^{T_qubit}
/// and the exact channel generator.
SodeReport sode_perturbative(const QuantumState &state, int qubit, ChannelKind kind);

enum class SpeedMeasure { negativity, concurrence2 };

/// (m(rho) - m(channel_dt(rho))) / dt for measure m.
double sode_finite_difference(const QuantumState &state, int qubit, ChannelKind kind, double dt,
                              SpeedMeasure measure = SpeedMeasure::negativity);

struct EtaBounds {
    double lower;
    double upper;
};

/// Two-qubit pure states: 2N + 1.
double eta_pure2(double n);
/// Extreme speeds over all two-qubit states of negativity n.
EtaBounds eta_bounds2(double n);
/// Speed of RhoC states in terms of negativity n and concurrence c.
double eta_rho_c(double n, double c);
/// Symmetric three-qubit pure states from (N, tau, I4).
double eta_sym3(double n, double tau, double i4);
/// General three-qubit pure states, qubit 1, from the invariant set.
double eta_gen3(const InvariantSet &inv);
/// k-qubit GHZ-type states, k >= 3: kN + 1/2.
double eta_ghz_k(int k, double n);
/// k-qubit W state.
double eta_w_k(int k);
/// k-qubit GHZ-type states under dephasing: kN.
double eta_dephasing_ghz_k(int k, double n);

/// Minimal negativity compatible with concurrence c (attained by RhoM).
double min_negativity_for_concurrence(double c);

struct Robustness {
    double t_star;
    double r;
};
/// T* = n / eta and R = 1 - exp(-T*). n = 0 gives (0, 0); eta = 0 < n gives (inf, 1).
Robustness robustness(double n, double eta);

/// max - min of the solver speed of Z(k, q, phi) over the phase grid.
double delta_eta_phase(int k, double q, std::span<const double> phi_grid,
                       ChannelKind kind = ChannelKind::depolarizing);

namespace formula {
struct Pure2 { double n; };
struct Bounds2 { double n; bool upper; };
struct RhoC { double n, c; };
struct G3 { double n; };
struct J3 { double n; };
struct Sym3 { double n, tau, i4; };
struct Gen3 { InvariantSet inv; };
struct GhzK { int k; double n; };
struct WK { int k; };
struct DephGhzK { int k; double n; };
}  // namespace formula

/// Closed-form speeds, selected by tag.
using EtaFormula = std::variant<formula::Pure2, formula::Bounds2, formula::RhoC, formula::G3, formula::J3,
                                formula::Sym3, formula::Gen3, formula::GhzK, formula::WK, formula::DephGhzK>;

double evaluate(const EtaFormula &f);

}  // namespace sodelab
