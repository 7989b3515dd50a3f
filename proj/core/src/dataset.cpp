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

#include "sodelab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sodelab {

namespace {

constexpr std::string_view kCsvMagic = "# sodelab-dataset v1";

std::array<double *, 17> core_fields(SampleRecord &r) {
    return {&r.negativity, &r.concurrence, &r.eta,  &r.eta_minus, &r.eta_zero, &r.linear_entropy,
            &r.mutual_info, &r.xi1,        &r.chi1, &r.xi2,       &r.chi2,     &r.I1,
            &r.I2,          &r.I3,         &r.I4,   &r.tau,       &r.theta};
}

std::array<double, 17> core_values(const SampleRecord &r) {
    return {r.negativity, r.concurrence, r.eta,  r.eta_minus, r.eta_zero, r.linear_entropy,
            r.mutual_info, r.xi1,        r.chi1, r.xi2,       r.chi2,     r.I1,
            r.I2,          r.I3,         r.I4,   r.tau,       r.theta};
}

void put_number(std::string &out, double v, bool json) {
    if (json && !std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        parts.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(const std::string &s) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw std::invalid_argument("dataset: malformed number '" + s + "'");
    }
    return v;
}

}  // namespace

const std::array<std::string_view, 17> &core_columns() {
    static const std::array<std::string_view, 17> cols = {
        "negativity", "concurrence", "eta", "eta_minus", "eta_zero", "linear_entropy",
        "mutual_info", "xi1",        "chi1", "xi2",      "chi2",     "I1",
        "I2",          "I3",         "I4",   "tau",      "Theta"};
    return cols;
}

DatasetFormat parse_format(std::string_view name) {
    if (name == "csv") return DatasetFormat::csv;
    if (name == "json") return DatasetFormat::json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv|json)");
}

std::string format_dataset(const Dataset &data, DatasetFormat format) {
    std::string out;
    const auto &cols = core_columns();
    for (const auto &p : data.param_names) {
        if (p == "index" || std::find(cols.begin(), cols.end(), p) != cols.end()) {
            throw std::invalid_argument("dataset: parameter column '" + p + "' clashes with a core column");
        }
    }
    if (format == DatasetFormat::csv) {
        out += kCsvMagic;
        out += " scenario=" + data.scenario + "\n";
        out += "index";
        for (auto c : cols) {
            out += ',';
            out += c;
        }
        for (const auto &p : data.param_names) {
            out += ',' + p;
        }
        out += '\n';
        for (const auto &r : data.records) {
            out += std::to_string(r.index);
            for (double v : core_values(r)) {
                out += ',';
                put_number(out, v, false);
            }
            for (double v : r.params) {
                out += ',';
                put_number(out, v, false);
            }
            out += '\n';
        }
        return out;
    }
    out += "[";
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const auto &r = data.records[i];
        out += i ? ",\n{" : "\n{";
        out += "\"index\":" + std::to_string(r.index);
        const auto vals = core_values(r);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out += ",\"";
            out += cols[c];
            out += "\":";
            put_number(out, vals[c], true);
        }
        for (std::size_t p = 0; p < data.param_names.size(); ++p) {
            out += ",\"" + data.param_names[p] + "\":";
            put_number(out, p < r.params.size() ? r.params[p] : kMissing, true);
        }
        out += "}";
    }
    out += "\n]\n";
    return out;
}

void emit_dataset(const Dataset &data, DatasetFormat format, const std::filesystem::path &path) {
    if (data.records.empty()) {
        throw std::invalid_argument("emit_dataset: no records");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    }
    out << format_dataset(data, format);
    if (!out) {
        throw std::ios_base::failure("write to " + path.string() + " failed");
    }
}

Dataset parse_dataset(std::string_view text, DatasetFormat format) {
    Dataset data;
    const auto &cols = core_columns();
    if (format == DatasetFormat::csv) {
        std::istringstream in{std::string(text)};
        std::string line;
        std::vector<std::string> header;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line.starts_with('#')) {
                const auto pos = line.find("scenario=");
                if (pos != std::string::npos) data.scenario = line.substr(pos + 9);
                continue;
            }
            if (header.empty()) {
                header = split(line, ',');
                if (header.size() < 1 + cols.size() || header[0] != "index") {
                    throw std::invalid_argument("dataset: unexpected CSV header");
                }
                data.param_names.assign(header.begin() + 1 + static_cast<long>(cols.size()), header.end());
                continue;
            }
            const auto cells = split(line, ',');
            if (cells.size() != header.size()) {
                throw std::invalid_argument("dataset: row has " + std::to_string(cells.size()) + " cells, expected " +
                                            std::to_string(header.size()));
            }
            SampleRecord r;
            r.index = static_cast<std::size_t>(std::stoull(cells[0]));
            auto fields = core_fields(r);
            for (std::size_t c = 0; c < cols.size(); ++c) *fields[c] = parse_number(cells[1 + c]);
            for (std::size_t p = 1 + cols.size(); p < cells.size(); ++p) r.params.push_back(parse_number(cells[p]));
            data.records.push_back(std::move(r));
        }
        return data;
    }
    // ordered_json keeps the emitted key order, which carries the parameter column order.
    const auto doc = nlohmann::ordered_json::parse(text);
    if (!doc.is_array()) {
        throw std::invalid_argument("dataset: JSON document must be an array");
    }
    auto num = [](const nlohmann::ordered_json &v) { return v.is_null() ? kMissing : v.get<double>(); };
    if (!doc.empty()) {
        std::size_t i = 0;
        for (const auto &item : doc.front().items()) {
            if (i++ > cols.size()) data.param_names.push_back(item.key());
        }
    }
    for (const auto &obj : doc) {
        SampleRecord r;
        r.index = obj.at("index").get<std::size_t>();
        auto fields = core_fields(r);
        for (std::size_t c = 0; c < cols.size(); ++c) *fields[c] = num(obj.at(std::string(cols[c])));
        for (const auto &name : data.param_names) r.params.push_back(num(obj.at(name)));
        data.records.push_back(std::move(r));
    }
    return data;
}

Dataset read_dataset(const std::filesystem::path &path, DatasetFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_dataset(ss.str(), format);
}

}  // namespace sodelab
