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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>

#include "sodelab/errors.hpp"
#include "sodelab/experiments.hpp"
#include "sodelab/linalg.hpp"
#include "sodelab/measures.hpp"
#include "sodelab/sode.hpp"
#include "sodelab/state_io.hpp"

namespace sodelab::cli {

namespace {

/// Reads a flat JSON object as CLI11 config items; arrays become repeated inputs.
class JsonConfig : public CLI::Config {
   public:
    std::string to_config(const CLI::App *, bool, bool, std::string) const override {
        throw CLI::FileError("writing JSON config is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        nlohmann::json doc;
        try {
            input >> doc;
        } catch (const nlohmann::json::exception &e) {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::ConversionError("config: top level must be an object");
        std::vector<CLI::ConfigItem> items;
        for (const auto &[key, value] : doc.items()) {
            CLI::ConfigItem item;
            item.name = key;
            std::replace(item.name.begin(), item.name.end(), '_', '-');
            auto push = [&](const nlohmann::json &v) {
                item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            };
            if (value.is_array()) {
                for (const auto &v : value) push(v);
            } else {
                push(value);
            }
            items.push_back(std::move(item));
        }
        return items;
    }
};

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

std::string fmt(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Single-state report: speeds, negativity and the k-specific measures.
std::string report(const QuantumState &state, int qubit, ChannelKind kind) {
    const SodeReport rep = sode_perturbative(state, qubit, kind);
    std::ostringstream os;
    os << "{\"k\":" << state.qubits() << ",\"qubit\":" << qubit << ",\"channel\":\"" << to_string(kind)
       << "\",\"negativity\":" << fmt(rep.negativity) << ",\"eta\":" << fmt(rep.eta)
       << ",\"eta_minus\":" << fmt(rep.eta_minus) << ",\"eta_zero\":" << fmt(rep.eta_zero)
       << ",\"t_star\":" << fmt(rep.t_star) << ",\"robustness\":" << fmt(rep.robustness);
    if (state.qubits() == 2) {
        os << ",\"concurrence\":" << fmt(concurrence2(state)) << ",\"linear_entropy\":" << fmt(linear_entropy(state));
    }
    if (state.qubits() == 3 && std::abs(state.purity() - 1.0) < 1e-9) {
        // A file-loaded state carries only rho; recover its amplitudes from the top eigenvector.
        const QuantumState pure =
            state.is_pure() ? state : QuantumState::from_pure(linalg::hermitian_eigendecompose(state.rho()).vectors.col(7));
        const InvariantSet inv = invariants3(pure);
        os << ",\"invariants\":{\"I1\":" << fmt(inv.I1) << ",\"I2\":" << fmt(inv.I2) << ",\"I3\":" << fmt(inv.I3)
           << ",\"I4\":" << fmt(inv.I4) << ",\"I5\":" << fmt(inv.I5) << ",\"tau\":" << fmt(inv.tau)
           << ",\"Theta\":" << fmt(inv.Theta) << ",\"M\":" << fmt(inv.M) << "}";
    }
    os << "}";
    return os.str();
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
    f << text << '\n';
    if (!f) throw std::ios_base::failure("write to '" + path.string() + "' failed");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Speed-of-disentanglement scenario runner"};
    app.name(args.empty() ? "sodelab" : args.front());

    ScenarioConfig cfg;
    std::string scenario, channel = "depolarizing", ensemble = "simplex", format = "csv", out_path, state_path, dump_path;
    std::size_t samples = 0;
    unsigned threads = 0;

    std::string names = "report";
    for (const auto &n : scenario_names()) names += "|" + n;
    app.add_option("scenario", scenario, "Scenario to run: " + names);
    app.add_option("--samples", samples, "Number of random samples (scenario default when omitted)")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    app.add_option("--seed", cfg.seed, "Root seed for the per-sample streams")->capture_default_str();
    app.add_option("--channel", channel, "depolarizing|dephasing")->capture_default_str();
    app.add_option("--ensemble", ensemble, "Two-qubit mixed-state ensemble: simplex|hs")->capture_default_str();
    app.add_option("--qubit", cfg.qubit, "Qubit the noise derivative is taken against")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--out", out_path, "Dataset path (stdout when omitted)");
    app.add_option("--format", format, "csv|json")->capture_default_str();
    app.add_option("--k", cfg.k, "Qubit count or largest k, per scenario")->check(CLI::NonNegativeNumber);
    app.add_option("--q-step", cfg.q_step, "Step of the q grid")->capture_default_str();
    app.add_option("--phi-points", cfg.phi_points, "Points of the phase grid on [0, 2pi)")->capture_default_str();
    app.add_option("--dt", cfg.dt, "Finite-difference step")->capture_default_str();
    app.add_option("--grid", cfg.grid, "Points per axis of two-parameter grids")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--state", state_path, "State JSON for the report scenario");
    app.add_option("--dump-states", dump_path, "Also write sampled states as JSON");

    // The JSON reader is chosen by extension; everything else goes through CLI11's TOML reader.
    bool json_config = false;
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string value;
        if (args[i] == "--config" && i + 1 < args.size()) value = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) value = args[i].substr(9);
        if (!value.empty()) json_config = std::filesystem::path(value).extension() == ".json";
    }
    app.set_config("--config", "", "TOML or JSON file mirroring the flags; flags override it");
    if (json_config) app.config_formatter(std::make_shared<JsonConfig>());

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error:usage:" << one_line(e.what()) << '\n';
        return 2;
    }

    try {
        if (scenario.empty()) throw std::invalid_argument("missing scenario; expected one of " + names);
        const ChannelKind kind = parse_channel(channel);
        const DatasetFormat fmt_kind = parse_format(format);

        if (scenario == "report") {
            if (state_path.empty()) throw std::invalid_argument("report needs --state PATH");
            const std::string text = report(read_state(state_path), cfg.qubit, kind);
            if (out_path.empty()) out << text << '\n';
            else write_text(out_path, text);
            return 0;
        }

        cfg.scenario = scenario;
        cfg.samples = samples;
        cfg.channel = kind;
        cfg.ensemble = parse_ensemble(ensemble);
        cfg.threads = threads;
        cfg.format = fmt_kind;
        cfg.output = out_path;
        cfg.keep_states = !dump_path.empty();
        const ScenarioResult res = run_scenario(cfg);
        if (!dump_path.empty()) {
            write_states(res.data.states, dump_path);
        }
        const std::string summary = "{\"scenario\":\"" + scenario + "\",\"summary\":" + res.summary.to_json() + "}";
        if (out_path.empty()) {
            out << format_dataset(res.data, fmt_kind);
            err << summary << '\n';
        } else {
            out << summary << '\n';
        }
        return 0;
    } catch (const std::exception &e) {
        err << "error:" << error_kind(e) << ":" << one_line(e.what()) << '\n';
        return 1;
    }
}

}  // namespace sodelab::cli
