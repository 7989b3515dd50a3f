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

#include "sodelab/state_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sodelab/errors.hpp"

namespace sodelab {

namespace {

using nlohmann::json;

json state_document(const QuantumState &state) {
    json rho = json::array();
    const ComplexMatrix &m = state.rho();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rho.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return json{{"k", state.qubits()}, {"rho", std::move(rho)}};
}

QuantumState state_from_document(const json &doc) {
    if (!doc.is_object() || !doc.contains("k") || !doc.contains("rho")) {
        throw std::invalid_argument("state document needs fields 'k' and 'rho'");
    }
    const int k = doc.at("k").get<int>();
    if (k < 1 || k > 12) {
        throw InvalidShape("state document: k out of range");
    }
    const Eigen::Index dim = Eigen::Index{1} << k;
    const json &rho = doc.at("rho");
    if (!rho.is_array() || static_cast<Eigen::Index>(rho.size()) != dim * dim) {
        throw InvalidShape("state document: rho must hold 4^k entries");
    }
    ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim * dim; ++i) {
        const json &e = rho[static_cast<std::size_t>(i)];
        if (!e.is_array() || e.size() != 2) {
            throw std::invalid_argument("state document: entries must be [re, im] pairs");
        }
        m(i / dim, i % dim) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return QuantumState::from_density(k, std::move(m));
}

}  // namespace

std::string state_to_json(const QuantumState &state) { return state_document(state).dump(); }

QuantumState state_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("state document is not valid JSON: ") + e.what());
    }
    return state_from_document(doc);
}

void write_state(const QuantumState &state, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    }
    out << state_to_json(state) << '\n';
}

QuantumState read_state(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return state_from_json(ss.str());
}

void write_states(const std::vector<std::pair<std::size_t, QuantumState>> &states,
                  const std::filesystem::path &path) {
    json arr = json::array();
    for (const auto &[index, state] : states) {
        json doc = state_document(state);
        doc["index"] = index;
        arr.push_back(std::move(doc));
    }
    std::ofstream out(path);
    if (!out) {
        throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    }
    out << arr.dump() << '\n';
}

}  // namespace sodelab
