// Copyright 2026 The shorsim Authors
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

#include "shorsim/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "shorsim/io.h"

using namespace shorsim;
using namespace shorsim::cli;

namespace {

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "shorsim_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(cli, parse_seed_forms) {
    EXPECT_EQ(parse_seed("42"), std::optional<uint64_t>(42));
    EXPECT_EQ(parse_seed("0x10"), std::optional<uint64_t>(16));
    EXPECT_EQ(parse_seed("0XfF"), std::optional<uint64_t>(255));
    EXPECT_EQ(parse_seed("18446744073709551615"), std::optional<uint64_t>(UINT64_MAX));
    EXPECT_FALSE(parse_seed("").has_value());
    EXPECT_FALSE(parse_seed("-1").has_value());
    EXPECT_FALSE(parse_seed("12ab").has_value());
    EXPECT_FALSE(parse_seed("0x").has_value());
}

TEST(cli, parse_magnitudes_forms) {
    EXPECT_EQ(parse_magnitudes("0.1,0.2"), (std::vector<double>{0.1, 0.2}));
    auto grid = parse_magnitudes("0:0.3:0.005");
    ASSERT_EQ(grid.size(), 61u);
    EXPECT_EQ(grid.front(), 0.0);
    EXPECT_EQ(grid[1], 0.005);
    EXPECT_EQ(grid.back(), 0.3);
    EXPECT_EQ(parse_magnitudes("0:0.25:0.1").size(), 3u);
    EXPECT_THROW(parse_magnitudes("0:1:0"), ConfigError);
    EXPECT_THROW(parse_magnitudes("a,b"), ConfigError);
}

TEST(cli, parse_defaults_and_examples) {
    auto cfg = parse_config({"spectrum", "--L", "7", "--r", "4"});
    EXPECT_EQ(cfg.command, Command::Spectrum);
    EXPECT_EQ(cfg.instance.dim, 128u);
    EXPECT_EQ(cfg.model.mode, ErrorMode::None);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.engine, SpectrumEngine::Direct);
    EXPECT_FALSE(cfg.out.has_value());

    auto sys = parse_config(
        {"spectrum", "--L", "7", "--r", "4", "--model", "systematic", "--delta0", "0.05", "--method", "closed"});
    EXPECT_EQ(sys.engine, SpectrumEngine::Closed);
    EXPECT_EQ(sys.model.delta0, 0.05);

    auto sweep = parse_config({"sweep", "--N", "15", "--y", "7", "--model", "systematic", "--magnitudes",
                               "0:0.3:0.005", "--multiplier-bound", "1", "--seed", "0x2a"});
    EXPECT_EQ(sweep.command, Command::Sweep);
    EXPECT_EQ(sweep.instance.order, 4u);
    EXPECT_EQ(sweep.magnitudes.size(), 61u);
    EXPECT_EQ(sweep.multiplier_bound, 1u);
    EXPECT_EQ(sweep.seed, 42u);
}

TEST(cli, configuration_errors_exit_2) {
    const std::vector<std::vector<std::string>> bad{
        {},
        {"spectrum"},
        {"spectrum", "--N", "15", "--y", "6"},
        {"spectrum", "--N", "15", "--y", "7", "--L", "8", "--r", "4"},
        {"spectrum", "--L", "7"},
        {"spectrum", "--L", "7", "--r", "4", "--model", "bogus"},
        {"spectrum", "--L", "7", "--r", "4", "--model", "uniform", "--smax", "0.1", "--method", "closed"},
        {"spectrum", "--L", "7", "--r", "4", "--seed", "xyz"},
        {"sweep", "--L", "7", "--r", "4", "--magnitudes", "0,0.1"},
        {"sweep", "--N", "15", "--y", "7"},
        {"sweep", "--N", "15", "--y", "7", "--magnitudes", "0.2,0.1"},
        {"ensemble", "--L", "7", "--r", "4", "--realizations", "0"},
        {"circuit", "--L", "25", "--r", "4"},
        {"factor", "--N", "15", "--y", "7", "--shots", "0"},
    };
    for (const auto &args : bad) {
        auto res = invoke(args);
        std::string joined;
        for (auto &a : args) joined += a + ' ';
        EXPECT_EQ(res.code, 2) << joined;
        EXPECT_FALSE(res.err.empty()) << joined;
    }
}

TEST(cli, help_exits_0) {
    auto res = invoke({"--help"});
    EXPECT_EQ(res.code, 0);
    EXPECT_NE(res.out.find("spectrum"), std::string::npos);
}

TEST(cli, spectrum_to_stdout) {
    auto res = invoke({"spectrum", "--L", "7", "--r", "4"});
    ASSERT_EQ(res.code, 0) << res.err;
    std::istringstream in(res.out);
    auto values = read_spectrum_csv(in);
    ASSERT_EQ(values.size(), 128u);
    EXPECT_NEAR(values[32], 0.25, 1e-12);
    EXPECT_NE(res.err.find("peaks"), std::string::npos);
}

TEST(cli, spectrum_to_file_writes_sidecar) {
    auto path = scratch("closed.csv");
    auto res = invoke({"spectrum", "--L", "7", "--r", "4", "--model", "systematic", "--delta0", "0.05", "--method",
                       "closed", "--out", path.string()});
    ASSERT_EQ(res.code, 0) << res.err;
    std::ifstream in(path);
    auto values = read_spectrum_csv(in);
    EXPECT_EQ(values, systematic_spectrum_closed_form(ShorInstance::synthetic(7, 4, 0), 0.05).values);
    auto meta = slurp(path.string() + ".meta");
    EXPECT_NE(meta.find("method=closed"), std::string::npos);
    EXPECT_NE(meta.find("delta0=0.05"), std::string::npos);
    EXPECT_NE(res.out.find("127"), std::string::npos);
}

TEST(cli, ensemble_reruns_are_byte_identical) {
    auto a = scratch("ens_a.csv"), b = scratch("ens_b.csv");
    for (const auto &path : {a, b}) {
        auto res = invoke({"ensemble", "--L", "7", "--r", "4", "--model", "gaussian", "--sigma", "0.05",
                           "--realizations", "30", "--seed", "7", "--out", path.string()});
        ASSERT_EQ(res.code, 0) << res.err;
    }
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a.string() + ".std.csv"), slurp(b.string() + ".std.csv"));
    EXPECT_FALSE(slurp(a.string() + ".std.csv").empty());
}

TEST(cli, sweep_output) {
    auto res = invoke({"sweep", "--N", "15", "--y", "7", "--model", "systematic", "--magnitudes", "0:0.3:0.005",
                       "--multiplier-bound", "1"});
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_NE(res.out.find("magnitude,success_probability"), std::string::npos);
    EXPECT_NE(res.out.find("# threshold=0.265 "), std::string::npos);
}

TEST(cli, factor_fifteen) {
    auto res = invoke({"factor", "--N", "15", "--y", "7", "--shots", "50", "--seed", "1"});
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_NE(res.out.find("r=4 factors=3,5"), std::string::npos) << res.out;
}

TEST(cli, circuit_command_runs) {
    auto res = invoke({"circuit", "--L", "6", "--r", "4", "--model", "systematic", "--delta0", "0.02"});
    ASSERT_EQ(res.code, 0) << res.err;
    std::istringstream in(res.out);
    auto values = read_spectrum_csv(in);
    double total = 0;
    for (double v : values) total += v;
    EXPECT_NEAR(total, 1.0, 1e-12);
}
