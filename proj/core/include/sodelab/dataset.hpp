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
#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sodelab/states.hpp"

namespace sodelab {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// One dataset row. Core columns not produced by a scenario stay NaN.
struct SampleRecord {
    std::size_t index = 0;
    double negativity = kMissing;
    double concurrence = kMissing;
    double eta = kMissing;
    double eta_minus = kMissing;
    double eta_zero = kMissing;
    double linear_entropy = kMissing;
    double mutual_info = kMissing;
    double xi1 = kMissing;
    double chi1 = kMissing;
    double xi2 = kMissing;
    double chi2 = kMissing;
    double I1 = kMissing;
    double I2 = kMissing;
    double I3 = kMissing;
    double I4 = kMissing;
    double tau = kMissing;
    /// The Theta invariant, emitted as column "Theta".
    double theta = kMissing;
    /// Scenario-specific columns, named by Dataset::param_names.
    std::vector<double> params;
};

/// Core column names in emission order (after "index").
const std::array<std::string_view, 17> &core_columns();

struct Dataset {
    std::string scenario;
    std::vector<std::string> param_names;
    std::vector<SampleRecord> records;
    /// Optional per-row states, filled when the run asks to keep them.
    std::vector<std::pair<std::size_t, QuantumState>> states;
};

enum class DatasetFormat { csv, json };

DatasetFormat parse_format(std::string_view name);

/// CSV: a "# sodelab-dataset v1 scenario=<name>" comment line, a header
/// "index,<core columns>,<params>", then one row per record. JSON: an array of
/// objects keyed by the same column names, NaN written as null. Numbers use 12
/// significant digits.
std::string format_dataset(const Dataset &data, DatasetFormat format);
void emit_dataset(const Dataset &data, DatasetFormat format, const std::filesystem::path &path);

Dataset parse_dataset(std::string_view text, DatasetFormat format);
Dataset read_dataset(const std::filesystem::path &path, DatasetFormat format);

}  // namespace sodelab
