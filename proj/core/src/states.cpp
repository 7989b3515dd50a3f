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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sodelab/errors.hpp"

namespace sodelab {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-12;
constexpr double kPositivityTolerance = 1e-10;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad_param(const char *family, const char *param, const std::string &why, double value) {
    std::ostringstream os;
    os << family << ": parameter '" << param << "' " << why << " (got " << value << ")";
    throw std::invalid_argument(os.str());
}

void require_range(const char *family, const char *param, double v, double lo, double hi) {
    if (!(v >= lo - 1e-12 && v <= hi + 1e-12)) {
        std::ostringstream why;
        why << "must lie in [" << lo << ", " << hi << "]";
        bad_param(family, param, why.str(), v);
    }
}

void require_nonnegative(const char *family, const char *param, double v) {
    if (!(v >= 0.0)) {
        bad_param(family, param, "must be non-negative", v);
    }
}

void require_unit_sum(const char *family, const char *what, double sum, double tol = kNormTolerance) {
    if (!(std::abs(sum - 1.0) <= tol)) {
        std::ostringstream os;
        os << family << ": " << what << " must sum to 1 (got " << sum << ")";
        throw std::invalid_argument(os.str());
    }
}

void require_qubits(const char *family, int k, int lo) {
    if (k < lo || k > 12) {
        std::ostringstream why;
        why << "must lie in [" << lo << ", 12]";
        bad_param(family, "k", why.str(), k);
    }
}

ComplexMatrix projector(const ComplexVector &v) { return v * v.adjoint(); }

ComplexVector normalized_checked(const char *family, ComplexVector v) {
    require_unit_sum(family, "squared amplitudes", v.squaredNorm());
    v /= v.norm();
    return v;
}

ComplexMatrix ansatz_matrix(const family::Ansatz &p) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = p.x + p.gamma / 2;
    m(0, 3) = m(3, 0) = p.gamma / 2;
    m(1, 1) = p.a;
    m(2, 2) = p.b;
    m(3, 3) = p.y + p.gamma / 2;
    return m;
}

void validate_ansatz(const family::Ansatz &p) {
    require_nonnegative("Ansatz", "x", p.x);
    require_nonnegative("Ansatz", "y", p.y);
    require_nonnegative("Ansatz", "a", p.a);
    require_nonnegative("Ansatz", "b", p.b);
    require_nonnegative("Ansatz", "gamma", p.gamma);
    require_unit_sum("Ansatz", "x + y + a + b + gamma", p.x + p.y + p.a + p.b + p.gamma, kTraceTolerance);
}

ComplexVector theta_amplitudes(double theta) {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = std::cos(theta);
    v(3) = std::sin(theta);
    return v;
}

QuantumState gtype_k(int k, Complex alpha, Complex beta) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << k);
    v(0) = alpha;
    v(v.size() - 1) = beta;
    return QuantumState::from_pure(normalized_checked("GTypeK", v));
}

}  // namespace

QuantumState QuantumState::from_density(int k, ComplexMatrix rho) {
    if (k < 1 || rho.rows() != rho.cols() || rho.rows() != (Eigen::Index{1} << k)) {
        throw InvalidShape("density matrix does not match " + std::to_string(k) + " qubits");
    }
    const double defect = linalg::hermiticity_defect(rho);
    if (defect > linalg::kHermitianTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian (relative defect " + std::to_string(defect) +
                                    ")");
    }
    rho = (rho + rho.adjoint()).eval() * 0.5;
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream os;
        os << "density matrix trace must be 1 (got " << tr.real() << ")";
        throw std::invalid_argument(os.str());
    }
    const double min_eig = linalg::hermitian_eigenvalues(rho).minCoeff();
    if (min_eig < -kPositivityTolerance) {
        std::ostringstream os;
        os << "density matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
        throw std::invalid_argument(os.str());
    }
    return QuantumState(k, std::move(rho), std::nullopt);
}

QuantumState QuantumState::from_pure(ComplexVector amplitudes) {
    const int k = linalg::qubit_count(amplitudes.size());
    if (k < 1) {
        throw InvalidShape("pure state needs at least one qubit");
    }
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        std::ostringstream os;
        os << "amplitude vector must have unit norm (got squared norm " << norm2 << ")";
        throw std::invalid_argument(os.str());
    }
    amplitudes /= std::sqrt(norm2);
    ComplexMatrix rho = projector(amplitudes);
    return QuantumState(k, std::move(rho), std::move(amplitudes));
}

QuantumState QuantumState::trusted(int k, ComplexMatrix rho) {
    if (k < 1 || rho.rows() != rho.cols() || rho.rows() != (Eigen::Index{1} << k)) {
        throw InvalidShape("density matrix does not match " + std::to_string(k) + " qubits");
    }
    return QuantumState(k, std::move(rho), std::nullopt);
}

const ComplexVector &QuantumState::amplitudes() const {
    if (!amplitudes_) {
        throw std::invalid_argument("state was not constructed as a pure state");
    }
    return *amplitudes_;
}

double QuantumState::purity() const { return (rho_ * rho_).trace().real(); }

ComplexVector basis_ket(std::initializer_list<int> bits) {
    const auto k = static_cast<int>(bits.size());
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << k);
    Eigen::Index idx = 0;
    for (int b : bits) {
        idx = (idx << 1) | (b ? 1 : 0);
    }
    v(idx) = 1.0;
    return v;
}

ComplexVector ghz_amplitudes(int k) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << k);
    v(0) = v(v.size() - 1) = 1.0 / std::numbers::sqrt2;
    return v;
}

ComplexVector w_amplitudes(int k) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << k);
    const double amp = 1.0 / std::sqrt(static_cast<double>(k));
    for (int q = 0; q < k; ++q) {
        v(linalg::qubit_mask(q, k)) = amp;
    }
    return v;
}

double itot_concurrence_profile(double x) { return -x / 2 + std::sqrt(x + 5 * x * x / 4); }

family::Ansatz rho_itot_parameters(double n_target, double a_free) {
    if (!(n_target > 0.0 && n_target < 1.0)) {
        bad_param("RhoItot", "n_target", "must lie in (0, 1)", n_target);
    }
    require_nonnegative("RhoItot", "a_free", a_free);
    const double f = itot_concurrence_profile(n_target);
    const double sa = std::sqrt(a_free);
    // Feasibility x = 1 - f - (sqrt(a) + sqrt(b))^2 >= 0 bounds u = sqrt(b).
    const double u_max = std::sqrt(std::max(0.0, 1.0 - f)) - sa;
    if (u_max < 0.0) {
        std::ostringstream os;
        os << "RhoItot: no state with x >= 0 for n_target=" << n_target << ", a_free=" << a_free;
        throw InfeasibleParameters(os.str());
    }
    // Negativity of the y = 0 ansatz with gamma = f + 2 sqrt(a b), minus the target.
    auto residual = [&](double u) {
        const double b = u * u;
        const double gamma = f + 2 * sa * u;
        return std::hypot(a_free - b, gamma) - (a_free + b) - n_target;
    };

    constexpr int kScan = 512;
    double lo = 0.0;
    double hi = -1.0;
    double r_lo = residual(0.0);
    if (r_lo == 0.0) {
        hi = 0.0;
    }
    for (int i = 1; i <= kScan && hi < 0.0; ++i) {
        const double u = u_max * i / kScan;
        const double r = residual(u);
        if (r == 0.0 || (r > 0.0) != (r_lo > 0.0)) {
            hi = u;
            if (r == 0.0) lo = u;
            break;
        }
        lo = u;
        r_lo = r;
    }
    if (hi < 0.0) {
        std::ostringstream os;
        os << "RhoItot: negativity " << n_target << " is not reachable with a_free=" << a_free;
        throw InfeasibleParameters(os.str());
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double r = residual(mid);
        if (r == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((r > 0.0) == (r_lo > 0.0)) {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
        }
    }
    const double u = 0.5 * (lo + hi);
    const double b = u * u;
    const double gamma = f + 2 * sa * u;
    const double x = std::max(0.0, 1.0 - gamma - a_free - b);
    return family::Ansatz{x, 0.0, a_free, b, gamma};
}

QuantumState make_rho_itot(double n_target, double a_free) {
    return build(rho_itot_parameters(n_target, a_free));
}

family::Ansatz rho_sl_as_ansatz(double gamma, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double g = gamma * 2 * s * c;
    return family::Ansatz{gamma * c * c - g / 2, gamma * s * s - g / 2, 1.0 - gamma, 0.0, g};
}

QuantumState build(const StateFamily &spec) {
    using namespace family;
    return std::visit(
        overloaded{
            [](const PureTheta &p) {
                require_range("PureTheta", "theta", p.theta, 0.0, std::numbers::pi / 4);
                return QuantumState::from_pure(theta_amplitudes(p.theta));
            },
            [](const Ansatz &p) {
                validate_ansatz(p);
                return QuantumState::trusted(2, ansatz_matrix(p));
            },
            [](const RhoM &p) {
                require_range("RhoM", "gamma", p.gamma, 0.0, 1.0);
                return QuantumState::trusted(2, ansatz_matrix(Ansatz{0, 0, 1 - p.gamma, 0, p.gamma}));
            },
            [](const RhoK &p) {
                require_range("RhoK", "gamma", p.gamma, 0.0, 1.0);
                const double a = (1 - p.gamma) / 2;
                return QuantumState::trusted(2, ansatz_matrix(Ansatz{0, 0, a, a, p.gamma}));
            },
            [](const RhoC &p) {
                require_nonnegative("RhoC", "gamma", p.gamma);
                require_nonnegative("RhoC", "a", p.a);
                require_nonnegative("RhoC", "b", p.b);
                require_unit_sum("RhoC", "gamma + a + b", p.gamma + p.a + p.b, kTraceTolerance);
                return QuantumState::trusted(2, ansatz_matrix(Ansatz{0, 0, p.a, p.b, p.gamma}));
            },
            [](const RhoSL &p) {
                require_range("RhoSL", "gamma", p.gamma, 0.0, 1.0);
                require_range("RhoSL", "theta", p.theta, 0.0, std::numbers::pi / 4);
                ComplexMatrix rho = p.gamma * projector(theta_amplitudes(p.theta)) +
                                    (1 - p.gamma) * projector(basis_ket({0, 1}));
                return QuantumState::trusted(2, std::move(rho));
            },
            [](const RhoItot &p) { return make_rho_itot(p.n_target, p.a_free); },
            [](const GHZ &) { return QuantumState::from_pure(ghz_amplitudes(3)); },
            [](const W &) { return QuantumState::from_pure(w_amplitudes(3)); },
            [](const WPrime &) {
                ComplexVector v = w_amplitudes(3).reverse();
                return QuantumState::from_pure(v);
            },
            [](const Symmetric &p) {
                ComplexVector v = p.t[0] * basis_ket({0, 0, 0}) + p.t[1] * w_amplitudes(3) +
                                  p.t[2] * ComplexVector(w_amplitudes(3).reverse()) + p.t[3] * basis_ket({1, 1, 1});
                return QuantumState::from_pure(normalized_checked("Symmetric", v));
            },
            [](const GType &p) {
                require_range("GType", "a", p.a, 0.0, 1.0);
                const double a = std::clamp(p.a, 0.0, 1.0);
                return gtype_k(3, std::sqrt(a), std::sqrt(1 - a));
            },
            [](const JState &p) {
                require_range("JState", "b", p.b, 0.0, 1.0);
                const double b = std::clamp(p.b, 0.0, 1.0);
                ComplexVector v = std::sqrt(b) * w_amplitudes(3) + std::sqrt(1 - b) * basis_ket({1, 1, 1});
                return QuantumState::from_pure(v);
            },
            [](const Upsilon &p) {
                ComplexVector v = p.c1 * basis_ket({0, 0, 0}) + p.c2 * w_amplitudes(3) + p.c3 * basis_ket({1, 1, 1});
                return QuantumState::from_pure(normalized_checked("Upsilon", v));
            },
            [](const Lambda &p) {
                ComplexVector v =
                    p.c0 * basis_ket({0, 0, 0}) + p.c1 * basis_ket({0, 0, 1}) + p.c6 * basis_ket({1, 1, 0});
                return QuantumState::from_pure(normalized_checked("Lambda", v));
            },
            [](const Omega &p) {
                ComplexVector v = p.c0 * basis_ket({0, 0, 0}) + p.c1 * basis_ket({0, 0, 1}) +
                                  p.c2 * basis_ket({0, 1, 0}) + p.c4 * basis_ket({1, 0, 0});
                return QuantumState::from_pure(normalized_checked("Omega", v));
            },
            [](const General3 &p) {
                ComplexVector v(8);
                for (int i = 0; i < 8; ++i) v(i) = p.c[i];
                return QuantumState::from_pure(normalized_checked("General3", v));
            },
            [](const GTypeK &p) {
                require_qubits("GTypeK", p.k, 2);
                return gtype_k(p.k, p.alpha, p.beta);
            },
            [](const WK &p) {
                require_qubits("WK", p.k, 2);
                return QuantumState::from_pure(w_amplitudes(p.k));
            },
            [](const ZState &p) {
                require_qubits("ZState", p.k, 2);
                require_range("ZState", "q", p.q, 0.0, 1.0);
                const double q = std::clamp(p.q, 0.0, 1.0);
                ComplexVector v = std::sqrt(q) * ghz_amplitudes(p.k) -
                                  std::polar(std::sqrt(1 - q), p.phi) * w_amplitudes(p.k);
                return QuantumState::from_pure(v);
            },
        },
        spec);
}

namespace {

ComplexVector gaussian_vector(Eigen::Index n, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

}  // namespace

QuantumState random_pure(int k, Rng &rng) {
    if (k < 1 || k > 12) {
        throw std::invalid_argument("random_pure: qubit count must lie in [1, 12]");
    }
    ComplexVector v = gaussian_vector(Eigen::Index{1} << k, rng);
    v /= v.norm();
    return QuantumState::from_pure(std::move(v));
}

QuantumState random_mixed2(Rng &rng) {
    ComplexMatrix g(4, 4);
    for (Eigen::Index c = 0; c < 4; ++c) {
        g.col(c) = gaussian_vector(4, rng);
    }
    ComplexMatrix rho = g * g.adjoint();
    rho = (rho + rho.adjoint()).eval() * 0.5;
    rho /= rho.trace().real();
    return QuantumState::trusted(2, std::move(rho));
}

QuantumState random_mixed2_simplex(Rng &rng) {
    const ComplexMatrix u = linalg::haar_unitary(4, rng);
    // Normalised unit exponentials are uniform on the probability simplex.
    std::exponential_distribution<double> expo(1.0);
    RealVector lambda(4);
    for (Eigen::Index i = 0; i < 4; ++i) lambda(i) = expo(rng);
    lambda /= lambda.sum();
    ComplexMatrix rho = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return QuantumState::trusted(2, std::move(rho));
}

QuantumState random_symmetric3(Rng &rng) {
    ComplexVector t = gaussian_vector(4, rng);
    t /= t.norm();
    return build(family::Symmetric{{t(0), t(1), t(2), t(3)}});
}

QuantumState mix(std::span<const std::pair<double, QuantumState>> components) {
    if (components.empty()) {
        throw std::invalid_argument("mix: no components");
    }
    const int k = components.front().second.qubits();
    double total = 0.0;
    for (const auto &[w, s] : components) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("mix: weights must be non-negative");
        }
        if (s.qubits() != k) {
            throw InvalidShape("mix: components have different qubit counts");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kTraceTolerance) {
        std::ostringstream os;
        os << "mix: weights must sum to 1 (got " << total << ")";
        throw std::invalid_argument(os.str());
    }
    ComplexMatrix rho = ComplexMatrix::Zero(components.front().second.dim(), components.front().second.dim());
    for (const auto &[w, s] : components) {
        rho += w * s.rho();
    }
    return QuantumState::trusted(k, std::move(rho));
}

QuantumState mix(std::initializer_list<std::pair<double, QuantumState>> components) {
    return mix(std::span<const std::pair<double, QuantumState>>(components.begin(), components.size()));
}

ComplexMatrix random_local_unitary(int k, Rng &rng) {
    if (k < 1 || k > 12) {
        throw std::invalid_argument("random_local_unitary: qubit count must lie in [1, 12]");
    }
    ComplexMatrix u = linalg::haar_unitary(2, rng);
    for (int q = 1; q < k; ++q) {
        u = linalg::kron(u, linalg::haar_unitary(2, rng));
    }
    return u;
}

QuantumState transform(const QuantumState &state, const ComplexMatrix &unitary) {
    if (unitary.rows() != state.dim() || unitary.cols() != state.dim()) {
        throw InvalidShape("transform: unitary does not match the state dimension");
    }
    if (state.is_pure()) {
        return QuantumState::from_pure(unitary * state.amplitudes());
    }
    ComplexMatrix rho = unitary * state.rho() * unitary.adjoint();
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return QuantumState::trusted(state.qubits(), std::move(rho));
}

}  // namespace sodelab
