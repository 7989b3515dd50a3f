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

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "sodelab/linalg.hpp"
#include "sodelab/rng.hpp"

namespace sodelab {

/// A k-qubit density matrix. States built from amplitudes keep them.
class QuantumState {
  public:
    /// Validates trace, Hermiticity and positivity.
    static QuantumState from_density(int k, ComplexMatrix rho);
    /// Normalizes nothing: throws if the amplitude vector is not unit norm.
    static QuantumState from_pure(ComplexVector amplitudes);
    /// Skips the positivity check. For outputs of maps known to preserve it
    /// (CPTP channels, convex mixtures of valid states, unitary conjugation).
    static QuantumState trusted(int k, ComplexMatrix rho);

    int qubits() const { return k_; }
    Eigen::Index dim() const { return rho_.rows(); }
    const ComplexMatrix &rho() const { return rho_; }
    bool is_pure() const { return amplitudes_.has_value(); }
    const ComplexVector &amplitudes() const;

    double purity() const;

  private:
    QuantumState(int k, ComplexMatrix rho, std::optional<ComplexVector> amps)
        : k_(k), rho_(std::move(rho)), amplitudes_(std::move(amps)) {}

    int k_;
    ComplexMatrix rho_;
    std::optional<ComplexVector> amplitudes_;
};

namespace family {

/// cos(theta)|00> + sin(theta)|11>, theta in [0, pi/4].
struct PureTheta { double theta; };
/// X-shaped two-qubit ansatz; x + y + a + b + gamma = 1, all non-negative.
struct Ansatz { double x, y, a, b, gamma; };
/// gamma |Bell><Bell| + (1 - gamma) |01><01|.
struct RhoM { double gamma; };
/// gamma |Bell><Bell| + a(|01><01| + |10><10|) with gamma + 2a = 1.
struct RhoK { double gamma; };
/// gamma |Bell><Bell| + a|01><01| + b|10><10|.
struct RhoC { double gamma, a, b; };
/// gamma |psi(theta)><psi(theta)| + (1 - gamma)|01><01|.
struct RhoSL { double gamma, theta; };
/// Ansatz with y = 0 and concurrence tied to negativity; see make_rho_itot.
struct RhoItot { double n_target, a_free; };
/// Three-qubit GHZ, W and W' = X⊗X⊗X |W>.
struct GHZ {};
struct W {};
struct WPrime {};
/// t1|000> + t2|W> + t3|W'> + t4|111>.
struct Symmetric { std::array<Complex, 4> t; };
/// sqrt(a)|000> + sqrt(1-a)|111>.
struct GType { double a; };
/// sqrt(b)|W> + sqrt(1-b)|111>.
struct JState { double b; };
/// c1|000> + c2|W> + c3|111>, real coefficients.
struct Upsilon { double c1, c2, c3; };
/// c0|000> + c1|001> + c6|110>, real coefficients.
struct Lambda { double c0, c1, c6; };
/// c0|000> + c1|001> + c2|010> + c4|100>.
struct Omega { Complex c0, c1, c2, c4; };
/// Arbitrary three-qubit amplitudes c_0..c_7 in computational order.
struct General3 { std::array<Complex, 8> c; };
/// alpha|0...0> + beta|1...1> on k qubits.
struct GTypeK { int k; Complex alpha, beta; };
/// k-qubit W state.
struct WK { int k; };
/// sqrt(q)|GHZ_k> - exp(i phi) sqrt(1-q)|W_k>.
struct ZState { int k; double q, phi; };

}  // namespace family

using StateFamily =
    std::variant<family::PureTheta, family::Ansatz, family::RhoM, family::RhoK, family::RhoC, family::RhoSL,
                 family::RhoItot, family::GHZ, family::W, family::WPrime, family::Symmetric, family::GType,
                 family::JState, family::Upsilon, family::Lambda, family::Omega, family::General3,
                 family::GTypeK, family::WK, family::ZState>;

QuantumState build(const StateFamily &family);

/// Computational basis state |bits>, bits[0] being qubit 0.
ComplexVector basis_ket(std::initializer_list<int> bits);
ComplexVector ghz_amplitudes(int k);
ComplexVector w_amplitudes(int k);

/// f(x) = -x/2 + sqrt(x + 5x^2/4), the concurrence assigned to negativity x
/// along the mutual-information family.
double itot_concurrence_profile(double x);

/// Ansatz parameters of the y = 0 state with negativity `n_target` and
/// concurrence f(n_target), for a given weight a = a_free on |01><01|.
family::Ansatz rho_itot_parameters(double n_target, double a_free);
QuantumState make_rho_itot(double n_target, double a_free);

/// Ansatz parameters equal to RhoSL(gamma, theta).
family::Ansatz rho_sl_as_ansatz(double gamma, double theta);

QuantumState random_pure(int k, Rng &rng);
/// Hilbert-Schmidt random two-qubit state G G^dagger / tr(G G^dagger).
QuantumState random_mixed2(Rng &rng);
/// Unitarily invariant two-qubit state U diag(lambda) U^dagger: Haar U, lambda uniform on the simplex.
QuantumState random_mixed2_simplex(Rng &rng);
/// Random symmetric three-qubit state: Haar-random (t1..t4) on the symmetric subspace.
QuantumState random_symmetric3(Rng &rng);

/// Convex combination; weights must be non-negative and sum to 1.
QuantumState mix(std::span<const std::pair<double, QuantumState>> components);
QuantumState mix(std::initializer_list<std::pair<double, QuantumState>> components);

/// Tensor product of k independent Haar-random single-qubit unitaries.
ComplexMatrix random_local_unitary(int k, Rng &rng);

/// U rho U^dagger; pure states stay pure.
QuantumState transform(const QuantumState &state, const ComplexMatrix &unitary);

}  // namespace sodelab
