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

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "gtest/gtest.h"

#include "sodelab/dataset.hpp"
#include "sodelab/state_io.hpp"
#include "sodelab/states.hpp"

using namespace sodelab;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "sodelab");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "sodelab_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write(const std::filesystem::path &p, const std::string &text) { std::ofstream(p) << text; }

const std::regex kErrorLine(R"(^error:[a-z-]+:[^\n]*\n$)");

}  // namespace

TEST(cli, writes_dataset_and_summary) {
    const auto path = scratch("s.csv");
    const Outcome o = run({"scatter2", "--samples", "20", "--seed", "3", "--out", path.string()});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("\"violations\":0"), std::string::npos);
    EXPECT_EQ(read_dataset(path, DatasetFormat::csv).records.size(), 20u);
}

TEST(cli, stdout_when_no_out) {
    const Outcome o = run({"wseries", "--k", "4", "--format", "json"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(parse_dataset(o.out, DatasetFormat::json).records.size(), 3u);
    EXPECT_NE(o.err.find("summary"), std::string::npos);
}

TEST(cli, errors_are_one_machine_line) {
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"bogus"},
             {},
             {"scatter2", "--samples", "0"},
             {"scatter2", "--channel", "amplitude"},
             {"scatter2", "--format", "xml"},
             {"scatter2", "--samples", "3", "--out", "/nonexistent_dir/x.csv"},
             {"scatter2", "--no-such-flag"},
             {"report"},
             {"report", "--state", "/nonexistent_dir/s.json"},
             {"zphase", "--q-step", "-1"},
         }) {
        const Outcome o = run(args);
        EXPECT_NE(o.code, 0);
        EXPECT_TRUE(std::regex_match(o.err, kErrorLine)) << o.err;
    }
    EXPECT_EQ(run({"scatter2", "--samples", "3", "--out", "/nonexistent_dir/x.csv"}).err.rfind("error:io:", 0), 0u);
    EXPECT_EQ(run({"bogus"}).err.rfind("error:invalid-argument:", 0), 0u);
}

TEST(cli, toml_and_json_configs_with_flag_override) {
    const auto toml = scratch("c.toml"), json = scratch("c.json");
    write(toml, "samples = 6\nseed = 9\nformat = \"json\"\nchannel = \"dephasing\"\n");
    write(json, R"({"samples": 6, "seed": 9, "format": "json", "channel": "dephasing", "phi_points": 8})");
    const auto a = scratch("a.json"), b = scratch("b.json"), c = scratch("c.json.out");
    ASSERT_EQ(run({"scatter2", "--config", toml.string(), "--out", a.string()}).code, 0);
    ASSERT_EQ(run({"scatter2", "--config", json.string(), "--out", b.string()}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(read_dataset(a, DatasetFormat::json).records.size(), 6u);
    ASSERT_EQ(run({"scatter2", "--config", json.string(), "--samples", "2", "--out", c.string()}).code, 0);
    EXPECT_EQ(read_dataset(c, DatasetFormat::json).records.size(), 2u);

    write(scratch("bad.json"), "{not json");
    const Outcome bad = run({"scatter2", "--config", scratch("bad.json").string()});
    EXPECT_NE(bad.code, 0);
    EXPECT_TRUE(std::regex_match(bad.err, kErrorLine)) << bad.err;
}

TEST(cli, scenario_from_config) {
    const auto toml = scratch("s.toml");
    write(toml, "scenario = \"wseries\"\nk = 3\n");
    const Outcome o = run({"--config", toml.string()});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(parse_dataset(o.out, DatasetFormat::csv).records.size(), 2u);
}

TEST(cli, report_and_state_dump) {
    const auto state = scratch("ghz.json");
    write_state(build(family::GHZ{}), state);
    const Outcome o = run({"report", "--state", state.string()});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("\"eta\":3.5"), std::string::npos) << o.out;
    EXPECT_NE(o.out.find("\"tau\":1"), std::string::npos) << o.out;

    const auto dump = scratch("dump.json");
    ASSERT_EQ(run({"scatter2", "--samples", "4", "--dump-states", dump.string(), "--out", scratch("d.csv").string()})
                  .code,
              0);
    EXPECT_NE(slurp(dump).find("\"index\""), std::string::npos);
}

TEST(cli, help_exits_zero) {
    const Outcome o = run({"--help"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("--phi-points"), std::string::npos);
}
