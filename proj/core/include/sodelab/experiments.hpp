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

#include <cstdint>
#include <functional>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sodelab/channels.hpp"
#include "sodelab/dataset.hpp"

namespace sodelab {

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Ensemble of the random two-qubit mixed states in the two-qubit scatters.
enum class MixedEnsemble {
    /// Haar unitary with a spectrum uniform on the simplex.
    simplex,
    /// Hilbert-Schmidt (square Ginibre) states.
    hilbert_schmidt,
};

std::string_view to_string(MixedEnsemble ensemble);
/// Accepts "simplex" or "hs".
MixedEnsemble parse_ensemble(std::string_view name);

struct ScenarioConfig {
    std::string scenario;
    /// 0 selects the scenario default (30000 for two-qubit scatters, 20000 for validate3).
    std::size_t samples = 0;
    std::uint64_t seed = kDefaultSeed;
    ChannelKind channel = ChannelKind::depolarizing;
    int qubit = 0;
    MixedEnsemble ensemble = MixedEnsemble::simplex;
    /// 0 selects the scenario default.
    int k = 0;
    double q_step = 0.05;
    int phi_points = 64;
    double dt = 1e-9;
    /// Points per axis for two-parameter grids.
    int grid = 41;
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 0;
    bool keep_states = false;
    std::filesystem::path output;
    DatasetFormat format = DatasetFormat::csv;
};

struct Summary {
    std::size_t rows = 0;
    std::size_t violations = 0;
    std::vector<std::pair<std::string, double>> metrics;

    double metric(const std::string &name) const;
    std::string to_json() const;
};

struct ScenarioResult {
    Dataset data;
    Summary summary;
};

const std::vector<std::string> &scenario_names();

/// Runs the scenario; if config.output is set the dataset is also written there.
ScenarioResult run_scenario(const ScenarioConfig &config);

/// Calls body(i) for i in [0, n) on `threads` workers. Exceptions are rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body);

}  // namespace sodelab
