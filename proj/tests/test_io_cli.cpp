// Copyright 2026 The gaussent Authors
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

#include "gaussent/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gaussent/io.hpp"
#include "test_support.hpp"

using namespace gaussent;
using io::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "gaussent");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("gaussent_test_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        std::vector<std::string> cells;
        std::istringstream cs(line);
        for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

// r of the first data row whose column `col` drops below 1.
double first_crossing(const std::string& csv, std::size_t col) {
    const auto rows = parse_csv(csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::stod(rows[i][col]) < 1.0) return std::stod(rows[i][0]);
    }
    return -1.0;
}

}  // namespace

TEST(Io, state_round_trip) {
    gaussent::testing::Rng rng(5);
    const Matrix g = gaussent::testing::random_physical(rng, 3).cm;
    Vector d(6);
    d << 0.1, -0.2, 0.3, 0.0, 1.5, -2.0;
    const GaussianState state(CovarianceMatrix(g), d);
    const GaussianState back = io::state_from_json(json::parse(io::to_json(state).dump()));
    EXPECT_LT((back.cm().matrix() - g).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((back.displacement() - d).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Io, displacement_is_optional) {
    const auto s = io::state_from_json(json::parse(R"({"n_modes": 1, "cm": [1, 0, 0, 1]})"));
    EXPECT_EQ(s.displacement(), Vector::Zero(2));
}

TEST(Io, rejects_malformed_documents) {
    const std::pair<const char*, ErrorKind> cases[] = {
        {R"([1, 2])", ErrorKind::InvalidArgument},
        {R"({"cm": [1, 0, 0, 1]})", ErrorKind::InvalidArgument},
        {R"({"n_modes": 1, "cm": [1, 0, 0]})", ErrorKind::DimensionMismatch},
        {R"({"n_modes": 1, "cm": [1, 0, "x", 1]})", ErrorKind::InvalidArgument},
        {R"({"n_modes": 1, "cm": [1, 0.5, 0, 1]})", ErrorKind::NotSymmetric},
        {R"({"n_modes": 1, "cm": [0.5, 0, 0, 0.5]})", ErrorKind::Unphysical},
        {R"({"n_modes": 1, "cm": [1, 0, 0, 1], "displacement": [0]})", ErrorKind::DimensionMismatch},
    };
    for (const auto& [text, kind] : cases) {
        try {
            io::state_from_json(json::parse(text));
            FAIL() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), kind) << text;
        }
    }
}

TEST(Io, twelve_significant_digits) {
    EXPECT_EQ(io::number(0.1234567890123456).dump(), "0.123456789012");
    EXPECT_EQ(io::round_sig(0.0), 0.0);
}

TEST(Cli, thresholds_json) {
    const auto r = run({"thresholds", "--epsilon", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(r.out);
    for (const char* key : {"epsilon", "r_l", "r_e", "r_m", "gap"}) ASSERT_TRUE(doc.contains(key)) << key;
    EXPECT_NEAR(doc["r_l"].get<double>(), 0.079, 1e-3);
    EXPECT_NEAR(doc["r_e"].get<double>(), 0.106, 1e-3);
    EXPECT_NEAR(doc["r_m"].get<double>(), 0.277, 1e-3);
    EXPECT_EQ(doc["r_e"].get<double>(), io::round_sig(threshold_r_e(0.1)));
}

TEST(Cli, thresholds_without_noise) {
    const auto r = run({"thresholds", "--epsilon", "0"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["r_m"].get<double>(), 0.0);
}

TEST(Cli, sweep_crossings_within_one_step) {
    const auto r = run({"sweep", "--epsilon", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 602u);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), cli::kSweepHeader);
    for (const auto& row : rows) EXPECT_EQ(row.size(), 5u);
    for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_GT(std::stod(rows[i][0]), std::stod(rows[i - 1][0]));
    const double step = 0.6 / 600;
    EXPECT_NEAR(first_crossing(r.out, 1), threshold_r_e(0.1), step);
    EXPECT_NEAR(first_crossing(r.out, 2), threshold_r_m(0.1), step);
    EXPECT_NEAR(first_crossing(r.out, 1), 0.106, step + 1e-3);
    EXPECT_NEAR(first_crossing(r.out, 2), 0.277, step + 1e-3);
}

TEST(Cli, sweep_json_matches_library) {
    const auto r = run({"sweep", "--epsilon", "0.2", "--r-min", "0.1", "--r-max", "0.5", "--steps", "4", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 5u);
    const auto row = cli::sweep_row(0.3, 0.2);
    EXPECT_EQ(doc[2]["mu_pair"].get<double>(), io::round_sig(row.mu_pair));
    EXPECT_EQ(doc[2]["class_final"], row.class_final);
}

TEST(Cli, gap_sweep_reaches_limit) {
    const auto r = run({"gap-sweep"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), cli::kGapHeader);
    ASSERT_EQ(rows.size(), 302u);
    EXPECT_NEAR(std::stod(rows.back()[4]), 0.314, 5e-3);
    EXPECT_EQ(std::stod(rows.back()[0]), 3.0);
}

TEST(Cli, analyze_shared_stage) {
    const auto r = run({"analyze", "--r", "0.3", "--epsilon", "0.1", "--stage", "shared"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["stage"], "shared");
    EXPECT_EQ(doc["report"]["class"], "one-mode-biseparable");
    EXPECT_EQ(doc["report"]["splitting"], "B|(AA′)");
    EXPECT_EQ(doc["report"]["verdicts"].size(), 3u);
    EXPECT_EQ(doc["report"]["pairwise"].size(), 3u);
    EXPECT_EQ(doc["state"]["cm"].size(), 36u);
}

TEST(Cli, classify_identity_file) {
    const auto path = temp_path("identity.json");
    json doc{{"n_modes", 3}, {"cm", io::row_major(Matrix::Identity(6, 6))}};
    write_file(path, doc.dump());
    const auto r = run({"classify", "-i", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["class"], "ppt-all-splittings");
    EXPECT_TRUE(json::parse(r.out)["splitting"].is_null());
    std::filesystem::remove(path);
}

TEST(Cli, classify_rejects_unphysical_file) {
    const auto path = temp_path("unphysical.json");
    Matrix g = Matrix::Identity(6, 6) * 0.5;
    write_file(path, json{{"n_modes", 3}, {"cm", io::row_major(g)}}.dump());
    const auto r = run({"classify", "--input", path.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("Unphysical"), std::string::npos) << r.err;
    std::filesystem::remove(path);
}

TEST(Cli, montecarlo_deviation_and_reruns) {
    const auto a_path = temp_path("mc_a.json");
    const auto b_path = temp_path("mc_b.json");
    const std::vector<std::string> args{"montecarlo", "--r", "0.3", "--epsilon", "0.1", "--samples", "1000000", "--seed", "42"};
    auto with_output = [&](const std::filesystem::path& p, const char* threads) {
        auto v = args;
        v.insert(v.end(), {"--threads", threads, "-o", p.string()});
        return run(v);
    };
    ASSERT_EQ(with_output(a_path, "1").code, 0);
    ASSERT_EQ(with_output(b_path, "4").code, 0);
    const std::string a = read_file(a_path);
    EXPECT_EQ(a, read_file(b_path));
    EXPECT_LT(json::parse(a)["max_abs_dev"].get<double>(), 0.01);
    std::filesystem::remove(a_path);
    std::filesystem::remove(b_path);
}

TEST(Cli, usage_errors_exit_two) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"thresholds"}).code, 2);
    EXPECT_EQ(run({"thresholds", "--epsilon", "-1"}).code, 2);
    EXPECT_EQ(run({"sweep", "--epsilon", "0.1", "--r-min", "0.5", "--r-max", "0.2"}).code, 2);
    EXPECT_EQ(run({"sweep", "--epsilon", "0.1", "--steps", "1"}).code, 2);
    EXPECT_EQ(run({"sweep", "--epsilon", "0.1", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"gap-sweep", "--epsilon-min", "2", "--epsilon-max", "1"}).code, 2);
    EXPECT_EQ(run({"analyze", "--r", "0.3", "--epsilon", "0.1", "--stage", "final"}).code, 2);
    EXPECT_EQ(run({"montecarlo", "--r", "0.3", "--epsilon", "0.1", "--samples", "1"}).code, 2);
    EXPECT_EQ(run({"classify", "-i", "/nonexistent/file.json"}).code, 2);
}

TEST(Cli, help_exits_zero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("thresholds"), std::string::npos);
}

TEST(Cli, identical_config_gives_identical_output) {
    const std::vector<std::string> args{"sweep", "--epsilon", "0.3", "--steps", "50"};
    EXPECT_EQ(run(args).out, run(args).out);
}
