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

#include "sodelab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

#include "sodelab/errors.hpp"
#include "sodelab/sode.hpp"
#include "sodelab/state_io.hpp"

namespace sodelab {

namespace {

constexpr double kBoundSlack = 1e-9;
constexpr double kXiSlack = 1e-10;
constexpr double kNegativityFloor = 1e-9;

struct Row {
    SampleRecord rec;
    std::optional<QuantumState> state;
};

std::size_t samples_or(const ScenarioConfig &c, std::size_t fallback) { return c.samples ? c.samples : fallback; }
int k_or(const ScenarioConfig &c, int fallback) { return c.k ? c.k : fallback; }

/// Evaluates `fn(i)` for every sample in parallel and returns rows ordered by index.
template <class Fn>
std::vector<Row> collect(std::size_t n, unsigned threads, Fn fn) {
    std::vector<std::optional<Row>> slots(n);
    parallel_for(n, threads, [&](std::size_t i) { slots[i] = fn(i); });
    std::vector<Row> rows;
    rows.reserve(n);
    for (auto &s : slots) {
        if (s) rows.push_back(std::move(*s));
    }
    return rows;
}

ScenarioResult assemble(const ScenarioConfig &cfg, std::vector<std::string> params, std::vector<Row> rows) {
    ScenarioResult res;
    res.data.scenario = cfg.scenario;
    res.data.param_names = std::move(params);
    for (auto &r : rows) {
        if (cfg.keep_states && r.state) res.data.states.emplace_back(r.rec.index, std::move(*r.state));
        res.data.records.push_back(std::move(r.rec));
    }
    res.summary.rows = res.data.records.size();
    return res;
}

void add(Summary &s, std::string name, double value) { s.metrics.emplace_back(std::move(name), value); }

/// Fills every two-qubit column for `state` and reports bound violations.
bool fill_two_qubit(SampleRecord &r, const QuantumState &state, ChannelKind kind, int qubit) {
    const SodeReport rep = sode_perturbative(state, qubit, kind);
    r.negativity = rep.negativity;
    r.eta = rep.eta;
    r.eta_minus = rep.eta_minus;
    r.eta_zero = rep.eta_zero;
    r.concurrence = concurrence2(state);
    r.linear_entropy = linear_entropy(state);
    const int a[] = {0};
    r.mutual_info = mutual_information(state, a);
    const double n = std::min(1.0, r.negativity);
    const EtaBounds b = eta_bounds2(n);
    r.xi1 = r.concurrence - r.negativity;
    r.chi1 = 2.0 * r.negativity + 1.0 - r.eta;
    r.xi2 = r.negativity - min_negativity_for_concurrence(r.concurrence);
    r.chi2 = r.eta - b.lower;
    if (kind != ChannelKind::depolarizing) return false;
    return r.eta < b.lower - kBoundSlack || r.eta > b.upper + kBoundSlack || r.xi1 < -kXiSlack ||
           r.chi1 < -kBoundSlack || r.xi2 < -kBoundSlack;
}

void fill_three_qubit(SampleRecord &r, const QuantumState &state, const SodeReport &rep, const InvariantSet &inv) {
    (void)state;
    r.negativity = rep.negativity;
    r.eta = rep.eta;
    r.eta_minus = rep.eta_minus;
    r.eta_zero = rep.eta_zero;
    r.I1 = inv.I1;
    r.I2 = inv.I2;
    r.I3 = inv.I3;
    r.I4 = inv.I4;
    r.tau = inv.tau;
    r.theta = inv.Theta;
}

QuantumState sample_mixed2(MixedEnsemble ensemble, Rng &rng) {
    return ensemble == MixedEnsemble::simplex ? random_mixed2_simplex(rng) : random_mixed2(rng);
}

/// Summary of a two-qubit scatter: bound gaps over entangled rows.
void summarize_two_qubit(Summary &s, const std::vector<SampleRecord> &recs) {
    double lower_gap = INFINITY, upper_gap = INFINITY, xi1_min = INFINITY, chi1_min = INFINITY;
    double n_max = 0.0;
    std::size_t entangled = 0;
    for (const auto &r : recs) {
        if (!(r.negativity > kNegativityFloor)) continue;
        ++entangled;
        const EtaBounds b = eta_bounds2(std::min(1.0, r.negativity));
        lower_gap = std::min(lower_gap, r.eta - b.lower);
        upper_gap = std::min(upper_gap, b.upper - r.eta);
        xi1_min = std::min(xi1_min, r.xi1);
        chi1_min = std::min(chi1_min, r.chi1);
        n_max = std::max(n_max, r.negativity);
    }
    add(s, "entangled", static_cast<double>(entangled));
    add(s, "negativity_max", n_max);
    add(s, "lower_gap_min", lower_gap);
    add(s, "upper_gap_min", upper_gap);
    add(s, "xi1_min", xi1_min);
    add(s, "chi1_min", chi1_min);
}

ScenarioResult scatter2(const ScenarioConfig &cfg, bool weighted) {
    const std::size_t n = samples_or(cfg, weighted ? 5000 : 30000);
    std::vector<std::string> params;
    if (weighted) params = {"weight", "gamma"};
    std::atomic<std::size_t> violations{0};
    auto rows = collect(n, cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        Rng rng = sample_stream(cfg.seed, i);
        Row row{};
        row.rec.index = i;
        QuantumState state = sample_mixed2(cfg.ensemble, rng);
        if (weighted) {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double w = unit(rng);
            const double g = unit(rng);
            state = mix({{w, state}, {1.0 - w, build(family::RhoM{g})}});
            row.rec.params = {w, g};
        }
        if (fill_two_qubit(row.rec, state, cfg.channel, cfg.qubit)) ++violations;
        row.state = std::move(state);
        return row;
    });
    auto res = assemble(cfg, params, std::move(rows));
    res.summary.violations = violations;
    summarize_two_qubit(res.summary, res.data.records);
    return res;
}

/// Random states plus the RhoM and RhoK frontier curves (family 1 and 2).
ScenarioResult xi_chi(const ScenarioConfig &cfg) {
    const std::size_t n = samples_or(cfg, 30000);
    const std::size_t curve = static_cast<std::size_t>(std::max(2, cfg.grid));
    std::atomic<std::size_t> violations{0};
    auto rows = collect(n + 2 * curve, cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        Row row{};
        row.rec.index = i;
        QuantumState state = [&] {
            if (i < n) {
                Rng rng = sample_stream(cfg.seed, i);
                row.rec.params = {0.0, kMissing};
                return sample_mixed2(cfg.ensemble, rng);
            }
            const std::size_t j = (i - n) % curve;
            const double gamma = static_cast<double>(j + 1) / static_cast<double>(curve);
            const bool is_m = i - n < curve;
            row.rec.params = {is_m ? 1.0 : 2.0, gamma};
            return is_m ? build(family::RhoM{gamma}) : build(family::RhoK{gamma});
        }();
        if (fill_two_qubit(row.rec, state, cfg.channel, cfg.qubit)) ++violations;
        if (i < n) row.state = std::move(state);
        return row;
    });
    auto res = assemble(cfg, {"family", "gamma"}, std::move(rows));
    res.summary.violations = violations;
    std::vector<SampleRecord> random(res.data.records.begin(), res.data.records.begin() + static_cast<long>(n));
    summarize_two_qubit(res.summary, random);

    // Largest excess of a random row's xi1 over the RhoM curve at the same chi1.
    std::vector<std::pair<double, double>> frontier;
    for (std::size_t i = n; i < n + curve; ++i) {
        frontier.emplace_back(res.data.records[i].chi1, res.data.records[i].xi1);
    }
    std::sort(frontier.begin(), frontier.end());
    double excess = -INFINITY;
    for (const auto &r : random) {
        if (!(r.negativity > kNegativityFloor)) continue;
        auto it = std::lower_bound(frontier.begin(), frontier.end(), std::pair<double, double>(r.chi1, -INFINITY));
        if (it == frontier.begin() || it == frontier.end()) continue;
        const auto &[x1, y1] = *it;
        const auto &[x0, y0] = *(it - 1);
        const double y = x1 > x0 ? y0 + (y1 - y0) * (r.chi1 - x0) / (x1 - x0) : std::max(y0, y1);
        excess = std::max(excess, r.xi1 - y);
    }
    add(res.summary, "xi1_excess_over_rho_m", excess);
    return res;
}

ScenarioResult twoparam_c(const ScenarioConfig &cfg) {
    const int g = std::max(2, cfg.grid);
    std::atomic<std::size_t> violations{0};
    std::mutex mu;
    double max_diff = 0.0;
    auto rows = collect(static_cast<std::size_t>(g * g), cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        const double gamma = static_cast<double>(i / g + 1) / g;
        const double a = (1.0 - gamma) * static_cast<double>(i % g) / (g - 1);
        const double b = std::max(0.0, 1.0 - gamma - a);
        Row row{};
        row.rec.index = i;
        const QuantumState state = build(family::RhoC{gamma, a, b});
        fill_two_qubit(row.rec, state, cfg.channel, cfg.qubit);
        double closed = kMissing, diff = kMissing;
        if (row.rec.negativity > kNegativityFloor && cfg.channel == ChannelKind::depolarizing) {
            closed = eta_rho_c(row.rec.negativity, std::max(row.rec.concurrence, row.rec.negativity));
            diff = std::abs(closed - row.rec.eta);
            if (diff > kBoundSlack) ++violations;
            std::lock_guard lock(mu);
            max_diff = std::max(max_diff, diff);
        }
        row.rec.params = {gamma, a, b, closed, diff};
        return row;
    });
    auto res = assemble(cfg, {"gamma", "a", "b", "eta_closed", "abs_diff"}, std::move(rows));
    res.summary.violations = violations;
    add(res.summary, "max_abs_diff", max_diff);
    return res;
}

ScenarioResult twoparam_sl(const ScenarioConfig &cfg) {
    const int g = std::max(2, cfg.grid);
    auto rows = collect(static_cast<std::size_t>(g * g), cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        const double gamma = static_cast<double>(i / g) / (g - 1);
        const double theta = std::numbers::pi / 4 * static_cast<double>(i % g) / (g - 1);
        Row row{};
        row.rec.index = i;
        fill_two_qubit(row.rec, build(family::RhoSL{gamma, theta}), cfg.channel, cfg.qubit);
        row.rec.params = {gamma, theta};
        return row;
    });
    return assemble(cfg, {"gamma", "theta"}, std::move(rows));
}

bool itot_feasible(double n, double a) {
    try {
        rho_itot_parameters(n, a);
        return true;
    } catch (const InfeasibleParameters &) {
        return false;
    }
}

/// Feasible a_free interval for a target negativity. Its lower end is the b = 0 solution,
/// a = (f^2 - n^2) / (2n); the upper end is where x = 1 - gamma - a - b reaches zero.
std::optional<std::pair<double, double>> itot_a_range(double n) {
    const double f = itot_concurrence_profile(n);
    double lo = (f * f - n * n) / (2 * n);
    double hi = 1.0 - f;
    if (lo > hi) return std::nullopt;
    // The b = 0 end is an exact root; step inside it so the bracket scan sees a sign change.
    double probe = lo;
    for (int i = 0; i < 40 && !itot_feasible(n, probe); ++i) probe = lo + (hi - lo) * std::ldexp(1.0, i - 40);
    if (!itot_feasible(n, probe)) return std::nullopt;
    lo = probe;
    double good = lo;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (good + hi);
        (itot_feasible(n, mid) ? good : hi) = mid;
    }
    return std::make_pair(lo, good);
}

ScenarioResult twoparam_itot(const ScenarioConfig &cfg) {
    const int g = std::max(2, cfg.grid);
    std::atomic<std::size_t> violations{0};
    std::atomic<std::size_t> skipped{0};
    auto rows = collect(static_cast<std::size_t>(g * g), cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        const double n_target = (static_cast<double>(i / g) + 0.5) / g;
        const double f = itot_concurrence_profile(n_target);
        const auto range = itot_a_range(n_target);
        if (!range) {
            ++skipped;
            return std::nullopt;
        }
        const double a_free = range->first + (range->second - range->first) * static_cast<double>(i % g) / (g - 1);
        std::optional<QuantumState> state;
        try {
            state = make_rho_itot(n_target, a_free);
        } catch (const InfeasibleParameters &) {
            ++skipped;
            return std::nullopt;
        }
        Row row{};
        row.rec.index = i;
        fill_two_qubit(row.rec, *state, cfg.channel, cfg.qubit);
        const double c_diff = std::abs(row.rec.concurrence - itot_concurrence_profile(row.rec.negativity));
        if (c_diff > 1e-8) ++violations;
        row.rec.params = {n_target, a_free, f, c_diff};
        return row;
    });
    auto res = assemble(cfg, {"n_target", "a_free", "f_n", "abs_c_diff"}, std::move(rows));
    res.summary.violations = violations;
    add(res.summary, "skipped_infeasible", static_cast<double>(skipped.load()));
    return res;
}

ScenarioResult scatter3(const ScenarioConfig &cfg, bool symmetric) {
    const std::size_t n = samples_or(cfg, 30000);
    std::atomic<std::size_t> violations{0};
    std::mutex mu;
    double max_diff = 0.0;
    std::size_t below = 0, above = 0;
    auto rows = collect(n, cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        Rng rng = sample_stream(cfg.seed, i);
        QuantumState state = symmetric ? random_symmetric3(rng) : random_pure(3, rng);
        const SodeReport rep = sode_perturbative(state, cfg.qubit, cfg.channel);
        const InvariantSet inv = invariants3(state);
        Row row{};
        row.rec.index = i;
        fill_three_qubit(row.rec, state, rep, inv);
        double closed = kMissing, diff = kMissing;
        const bool comparable = cfg.channel == ChannelKind::depolarizing && cfg.qubit == 0;
        if (comparable && rep.negativity > kNegativityFloor) {
            closed = symmetric ? eta_sym3(inv.N1, inv.tau, inv.I4) : eta_gen3(inv);
            diff = std::abs(closed - rep.eta);
            if (diff > (symmetric ? 1e-7 : 1e-5)) ++violations;
        }
        const double nn = rep.negativity;
        const double lower = symmetric ? 3.0 * nn + 0.5 : std::min(3.0 * nn + 0.5, 2.0 * nn + 1.0);
        const double upper = 2.5 * nn + 1.0;
        {
            std::lock_guard lock(mu);
            if (std::isfinite(diff)) max_diff = std::max(max_diff, diff);
            if (comparable && nn > kNegativityFloor) {
                below += rep.eta < lower - kBoundSlack;
                above += rep.eta > upper + kBoundSlack;
            }
        }
        row.rec.params = {closed, diff, inv.N2, inv.N3};
        row.state = std::move(state);
        return row;
    });
    auto res = assemble(cfg, {"eta_closed", "abs_diff", "N2", "N3"}, std::move(rows));
    res.summary.violations = violations;
    add(res.summary, "max_abs_diff", max_diff);
    add(res.summary, "below_lower_bound", static_cast<double>(below));
    add(res.summary, "above_upper_bound", static_cast<double>(above));
    return res;
}

ScenarioResult validate3(const ScenarioConfig &cfg) {
    const std::size_t n = samples_or(cfg, 20000);
    constexpr double kFloor = 1e-5;
    constexpr double kThetaBand = 1e-8;
    std::mutex mu;
    double max_delta = 0.0;
    std::size_t checked = 0, theta_mismatch = 0, sign_mismatch = 0, over = 0;
    auto rows = collect(n, cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        Rng rng = sample_stream(cfg.seed, i);
        QuantumState state = random_pure(3, rng);
        const SodeReport rep = sode_perturbative(state, 0, ChannelKind::depolarizing);
        const InvariantSet inv = invariants3(state);
        const double fd = sode_finite_difference(state, 0, ChannelKind::depolarizing, cfg.dt);
        Row row{};
        row.rec.index = i;
        fill_three_qubit(row.rec, state, rep, inv);
        double closed = kMissing, delta = kMissing;
        if (inv.N1 > 0.0) {
            closed = eta_gen3(inv);
            delta = std::abs(closed - fd);
        }
        const double alt = std::abs(inv.C12 * inv.C12 - inv.C13 * inv.C13) - inv.tau;
        {
            std::lock_guard lock(mu);
            if (inv.N1 >= kFloor) {
                ++checked;
                max_delta = std::max(max_delta, delta);
                over += delta >= 1e-5;
            }
            if (std::abs(inv.Theta) > kThetaBand) {
                theta_mismatch += (rep.eta_zero > kThetaBand) != (inv.Theta > kThetaBand);
                sign_mismatch += (inv.Theta > 0.0) != (alt > 0.0);
            }
        }
        row.rec.params = {closed, fd, delta, alt};
        row.state = std::move(state);
        return row;
    });
    auto res = assemble(cfg, {"eta_closed", "eta_fd", "delta_eta", "tangle_imbalance"}, std::move(rows));
    res.summary.violations = over + theta_mismatch + sign_mismatch;
    add(res.summary, "rows_checked", static_cast<double>(checked));
    add(res.summary, "max_delta_eta", max_delta);
    add(res.summary, "delta_eta_over_1e-5", static_cast<double>(over));
    add(res.summary, "theta_criterion_mismatch", static_cast<double>(theta_mismatch));
    add(res.summary, "theta_sign_mismatch", static_cast<double>(sign_mismatch));
    return res;
}

ScenarioResult wseries(const ScenarioConfig &cfg) {
    const int kmax = k_or(cfg, 10);
    if (kmax < 2 || kmax > 12) throw std::invalid_argument("wseries: --k must lie in [2, 12]");
    std::atomic<std::size_t> violations{0};
    auto rows = collect(static_cast<std::size_t>(kmax - 1), cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        const int k = static_cast<int>(i) + 2;
        const SodeReport rep = sode_perturbative(build(family::WK{k}), cfg.qubit % k, cfg.channel);
        Row row{};
        row.rec.index = i;
        row.rec.negativity = rep.negativity;
        row.rec.eta = rep.eta;
        row.rec.eta_minus = rep.eta_minus;
        row.rec.eta_zero = rep.eta_zero;
        double closed = kMissing, diff = kMissing;
        if (cfg.channel == ChannelKind::depolarizing) {
            closed = eta_w_k(k);
            diff = std::abs(closed - rep.eta);
            if (diff > kBoundSlack) ++violations;
        }
        row.rec.params = {static_cast<double>(k), closed, diff, rep.robustness};
        return row;
    });
    auto res = assemble(cfg, {"k", "eta_closed", "abs_diff", "robustness"}, std::move(rows));
    res.summary.violations = violations;
    int peak = 0;
    double best = -INFINITY;
    for (const auto &r : res.data.records) {
        if (r.eta > best) {
            best = r.eta;
            peak = static_cast<int>(r.params[0]);
        }
    }
    add(res.summary, "peak_k", peak);
    return res;
}

std::vector<double> phi_grid(int points) {
    if (points < 1) throw std::invalid_argument("--phi-points must be positive");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / points;
    return g;
}

std::vector<double> q_grid(double step) {
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("--q-step must lie in (0, 1]");
    std::vector<double> g;
    const auto count = static_cast<int>(std::floor(1.0 / step + 1e-9));
    for (int i = 0; i <= count; ++i) g.push_back(std::min(1.0, i * step));
    if (g.back() < 1.0) g.push_back(1.0);
    return g;
}

ScenarioResult zphase(const ScenarioConfig &cfg) {
    const int k = k_or(cfg, 5);
    const auto qs = q_grid(cfg.q_step);
    const auto phis = phi_grid(cfg.phi_points);
    std::mutex mu;
    double max_delta = 0.0, max_n_spread = 0.0;
    auto rows = collect(qs.size(), cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        const double q = qs[i];
        double lo = INFINITY, hi = -INFINITY, n_lo = INFINITY, n_hi = -INFINITY;
        for (double phi : phis) {
            const SodeReport rep = sode_perturbative(build(family::ZState{k, q, phi}), cfg.qubit, cfg.channel);
            lo = std::min(lo, rep.eta);
            hi = std::max(hi, rep.eta);
            n_lo = std::min(n_lo, rep.negativity);
            n_hi = std::max(n_hi, rep.negativity);
        }
        Row row{};
        row.rec.index = i;
        row.rec.negativity = n_lo;
        row.rec.params = {q, hi - lo, lo, hi, n_hi - n_lo};
        std::lock_guard lock(mu);
        max_delta = std::max(max_delta, hi - lo);
        max_n_spread = std::max(max_n_spread, n_hi - n_lo);
        return row;
    });
    auto res = assemble(cfg, {"q", "delta_eta", "eta_min", "eta_max", "negativity_spread"}, std::move(rows));
    add(res.summary, "k", k);
    add(res.summary, "max_delta_eta", max_delta);
    add(res.summary, "max_negativity_spread", max_n_spread);
    return res;
}

std::vector<int> log_grid(int kmin, int kmax) {
    std::vector<int> ks;
    for (int k = kmin; k <= std::min(kmax, 10); ++k) ks.push_back(k);
    for (long decade = 10; decade <= kmax; decade *= 10) {
        for (int m : {2, 5, 10}) {
            const long k = decade * m;
            if (k <= kmax && k > 10) ks.push_back(static_cast<int>(k));
        }
    }
    if (ks.empty() || ks.back() != kmax) ks.push_back(kmax);
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

ScenarioResult robustness_scaling(const ScenarioConfig &cfg) {
    const int kmax = k_or(cfg, 10000);
    if (kmax < 3) throw std::invalid_argument("robustness-scaling: --k must be at least 3");
    const auto ks = log_grid(3, kmax);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const int k = ks[i];
        const double kk = k;
        const Robustness ghz = robustness(1.0, eta_ghz_k(k, 1.0));
        const double n_w = 2.0 * std::sqrt(kk - 1.0) / kk;
        const Robustness w = robustness(n_w, eta_w_k(k));
        const Robustness deph = robustness(1.0, eta_dephasing_ghz_k(k, 1.0));
        Row row{};
        row.rec.index = i;
        row.rec.params = {kk, ghz.r, kk * ghz.r, n_w, eta_w_k(k), w.r, std::sqrt(kk) * w.r, deph.r, kk * deph.r};
        rows.push_back(std::move(row));
    }
    auto res = assemble(cfg,
                        {"k", "r_ghz", "k_r_ghz", "negativity_w", "eta_w", "r_w", "sqrtk_r_w", "r_ghz_dephasing",
                         "k_r_ghz_dephasing"},
                        std::move(rows));
    const auto &last = res.data.records.back().params;
    add(res.summary, "k_max", last[0]);
    add(res.summary, "k_r_ghz", last[2]);
    add(res.summary, "sqrtk_r_w", last[6]);
    add(res.summary, "k_r_ghz_dephasing", last[8]);
    return res;
}

/// Random pure two-qubit rows (family 0) followed by ansatz rows with shrinking b (family 1).
ScenarioResult concurrence_speed(const ScenarioConfig &cfg) {
    const std::size_t n = samples_or(cfg, 1000);
    const std::array<double, 3> probe_b = {1e-2, 1e-3, 1e-4};
    std::atomic<std::size_t> violations{0};
    auto rows = collect(n + probe_b.size(), cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        Row row{};
        row.rec.index = i;
        QuantumState state = [&] {
            if (i < n) {
                Rng rng = sample_stream(cfg.seed, i);
                return random_pure(2, rng);
            }
            const double b = probe_b[i - n];
            return build(family::Ansatz{0.1, 0.1, 0.2, b, 0.6 - b});
        }();
        const SodeReport rep = sode_perturbative(state, cfg.qubit, cfg.channel);
        row.rec.negativity = rep.negativity;
        row.rec.eta = rep.eta;
        row.rec.eta_minus = rep.eta_minus;
        row.rec.eta_zero = rep.eta_zero;
        row.rec.concurrence = concurrence2(state);
        const double eta_c = sode_finite_difference(state, cfg.qubit, cfg.channel, cfg.dt, SpeedMeasure::concurrence2);
        const double eta_n = sode_finite_difference(state, cfg.qubit, cfg.channel, cfg.dt, SpeedMeasure::negativity);
        if (i < n && eta_c > rep.eta + 1e-5) ++violations;
        row.rec.params = {i < n ? 0.0 : 1.0, i < n ? kMissing : probe_b[i - n], eta_c, eta_n};
        if (i < n) row.state = std::move(state);
        return row;
    });
    auto res = assemble(cfg, {"family", "b", "eta_c_fd", "eta_n_fd"}, std::move(rows));
    res.summary.violations = violations;
    double max_gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &r = res.data.records[i];
        max_gap = std::max(max_gap, std::abs(r.params[2] - r.eta));
    }
    bool increasing = true;
    for (std::size_t j = n + 1; j < res.data.records.size(); ++j) {
        increasing = increasing && res.data.records[j].params[2] > res.data.records[j - 1].params[2];
    }
    add(res.summary, "max_abs_eta_c_minus_eta_n", max_gap);
    add(res.summary, "probe_increasing", increasing ? 1.0 : 0.0);
    return res;
}

ScenarioResult dephasing_check(const ScenarioConfig &cfg) {
    const int kmax = k_or(cfg, 6);
    if (kmax < 2 || kmax > 12) throw std::invalid_argument("dephasing-check: --k must lie in [2, 12]");
    const int g = std::max(2, cfg.grid);
    std::atomic<std::size_t> violations{0};
    std::mutex mu;
    double max_diff = 0.0;
    const auto total = static_cast<std::size_t>((kmax - 1) * g);
    auto rows = collect(total, cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        const int k = static_cast<int>(i / g) + 2;
        const double alpha = std::sqrt(static_cast<double>(i % g + 1) / (g + 1));
        const SodeReport rep = sode_perturbative(
            build(family::GTypeK{k, alpha, std::sqrt(1.0 - alpha * alpha)}), cfg.qubit % k, ChannelKind::dephasing);
        const double closed = eta_dephasing_ghz_k(k, std::min(1.0, rep.negativity));
        const double diff = std::abs(closed - rep.eta);
        if (diff > 1e-8) ++violations;
        {
            std::lock_guard lock(mu);
            max_diff = std::max(max_diff, diff);
        }
        Row row{};
        row.rec.index = i;
        row.rec.negativity = rep.negativity;
        row.rec.eta = rep.eta;
        row.rec.eta_minus = rep.eta_minus;
        row.rec.eta_zero = rep.eta_zero;
        row.rec.params = {static_cast<double>(k), alpha, closed, diff};
        return row;
    });
    auto res = assemble(cfg, {"k", "alpha", "eta_closed", "abs_diff"}, std::move(rows));
    res.summary.violations = violations;
    add(res.summary, "max_abs_diff", max_diff);
    return res;
}

ScenarioResult ghz_series(const ScenarioConfig &cfg) {
    const int kmax = k_or(cfg, 6);
    if (kmax < 3 || kmax > 12) throw std::invalid_argument("ghz-series: --k must lie in [3, 12]");
    const int g = std::max(2, cfg.grid);
    std::atomic<std::size_t> violations{0};
    auto rows = collect(static_cast<std::size_t>((kmax - 2) * g), cfg.threads, [&](std::size_t i) -> std::optional<Row> {
        const int k = static_cast<int>(i / g) + 3;
        const double alpha = std::sqrt(static_cast<double>(i % g + 1) / (g + 1));
        const SodeReport rep = sode_perturbative(build(family::GTypeK{k, alpha, std::sqrt(1.0 - alpha * alpha)}),
                                                 cfg.qubit % k, cfg.channel);
        double closed = kMissing, diff = kMissing;
        if (cfg.channel == ChannelKind::depolarizing) {
            closed = eta_ghz_k(k, std::min(1.0, rep.negativity));
            diff = std::abs(closed - rep.eta);
            if (diff > 1e-8) ++violations;
        }
        Row row{};
        row.rec.index = i;
        row.rec.negativity = rep.negativity;
        row.rec.eta = rep.eta;
        row.rec.eta_minus = rep.eta_minus;
        row.rec.eta_zero = rep.eta_zero;
        row.rec.params = {static_cast<double>(k), alpha, closed, diff};
        return row;
    });
    auto res = assemble(cfg, {"k", "alpha", "eta_closed", "abs_diff"}, std::move(rows));
    res.summary.violations = violations;
    return res;
}

using ScenarioFn = ScenarioResult (*)(const ScenarioConfig &);

const std::map<std::string, ScenarioFn, std::less<>> &registry() {
    static const std::map<std::string, ScenarioFn, std::less<>> table = {
        {"scatter2", [](const ScenarioConfig &c) { return scatter2(c, false); }},
        {"weighted2", [](const ScenarioConfig &c) { return scatter2(c, true); }},
        {"xi-chi", xi_chi},
        {"twoparam-c", twoparam_c},
        {"twoparam-sl", twoparam_sl},
        {"twoparam-itot", twoparam_itot},
        {"scatter3-sym", [](const ScenarioConfig &c) { return scatter3(c, true); }},
        {"scatter3-gen", [](const ScenarioConfig &c) { return scatter3(c, false); }},
        {"validate3", validate3},
        {"wseries", wseries},
        {"ghz-series", ghz_series},
        {"zphase", zphase},
        {"robustness-scaling", robustness_scaling},
        {"concurrence-speed", concurrence_speed},
        {"dephasing-check", dephasing_check},
    };
    return table;
}

}  // namespace

double Summary::metric(const std::string &name) const {
    for (const auto &[k, v] : metrics) {
        if (k == name) return v;
    }
    throw std::out_of_range("summary has no metric '" + name + "'");
}

std::string Summary::to_json() const {
    std::string out = "{\"rows\":" + std::to_string(rows) + ",\"violations\":" + std::to_string(violations) +
                      ",\"metrics\":{";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (i) out += ',';
        out += "\"" + metrics[i].first + "\":";
        if (std::isfinite(metrics[i].second)) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", metrics[i].second);
            out += buf;
        } else {
            out += "null";
        }
    }
    out += "}}";
    return out;
}

std::string_view to_string(MixedEnsemble ensemble) {
    return ensemble == MixedEnsemble::simplex ? "simplex" : "hs";
}

MixedEnsemble parse_ensemble(std::string_view name) {
    if (name == "simplex") return MixedEnsemble::simplex;
    if (name == "hs") return MixedEnsemble::hilbert_schmidt;
    throw std::invalid_argument("unknown ensemble '" + std::string(name) + "' (expected simplex|hs)");
}

const std::vector<std::string> &scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &[name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

ScenarioResult run_scenario(const ScenarioConfig &config) {
    const auto &table = registry();
    const auto it = table.find(config.scenario);
    if (it == table.end()) {
        throw std::invalid_argument("unknown scenario '" + config.scenario + "'");
    }
    if (config.qubit < 0) throw std::invalid_argument("--qubit must be non-negative");
    if (!(config.dt > 0.0)) throw std::invalid_argument("--dt must be positive");
    ScenarioResult res = it->second(config);
    if (res.data.records.empty()) {
        throw InfeasibleParameters("scenario '" + config.scenario + "' produced no rows for this grid");
    }
    if (!config.output.empty()) {
        emit_dataset(res.data, config.format, config.output);
    }
    return res;
}

}  // namespace sodelab
