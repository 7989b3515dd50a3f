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

#include <string>
#include <string_view>
#include <vector>

#include "sodelab/states.hpp"

namespace sodelab {

/// Local noise acting independently on every qubit. Time is measured in units
/// of the inverse decay constant, so s = exp(-t).
enum class ChannelKind { depolarizing, dephasing };

std::string_view to_string(ChannelKind kind);
ChannelKind parse_channel(std::string_view name);

/// Single-qubit Kraus operators of the channel after time t.
std::vector<ComplexMatrix> kraus_operators(ChannelKind kind, double t);

/// The k-fold product channel applied for time t >= 0.
QuantumState apply_channel(const QuantumState &state, double t, ChannelKind kind);

/// Exact d(rho)/dt at t = 0. Traceless and Hermitian.
ComplexMatrix generator(const QuantumState &state, ChannelKind kind);

}  // namespace sodelab
