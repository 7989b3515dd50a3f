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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sodelab/states.hpp"

namespace sodelab {

// Document layout: {"k": <int>, "rho": [[re, im], ...]} with rho row-major.

std::string state_to_json(const QuantumState &state);
QuantumState state_from_json(std::string_view text);

void write_state(const QuantumState &state, const std::filesystem::path &path);
QuantumState read_state(const std::filesystem::path &path);

/// JSON array of {"index": i, "k": ..., "rho": ...} documents.
void write_states(const std::vector<std::pair<std::size_t, QuantumState>> &states,
                  const std::filesystem::path &path);

}  // namespace sodelab
