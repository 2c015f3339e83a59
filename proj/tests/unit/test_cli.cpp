#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/io.hpp"
#include "mvapprox/error.hpp"
#include "mvapprox/experiments.hpp"

namespace fs = std::filesystem;
using namespace mvapprox;
using namespace mvapprox::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "mvapprox");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("mvapprox_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                                   ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << content;
        return p;
    }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Io, DoublesRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 1e-6}) {
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
    EXPECT_THROW(parse_double("1.0x"), Error);
    EXPECT_THROW(parse_double(""), Error);
}

TEST(Io, MatrixCsv) {
    const Matrix m = parse_matrix_csv("1,0.5\n0.5,2\n");
    EXPECT_EQ(m(1, 1), 2.0);
    EXPECT_EQ(m(0, 1), 0.5);
    try {
        parse_matrix_csv("1,2\n3\n");
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(Io, SequenceCsvWithHeaderAndShuffledRows) {
    const auto s = parse_sequence_csv("index,value\n1,2.0\n0,1.0\n2,3.0\n");
    ASSERT_EQ(s.size(), 3U);
    EXPECT_EQ(s.at(0), 1.0);
    EXPECT_EQ(s.at(2), 3.0);
    EXPECT_THROW(parse_sequence_csv("0,1\n2,3\n"), Error);
    const auto two = parse_sequence_csv("0,1,2\n1,3,4\n");
    EXPECT_EQ(two.channels(), 2U);
}

TEST(Io, AtomicWriteReplacesFile) {
    TempDir dir;
    const fs::path p = dir / "x.txt";
    write_atomic(p, "first");
    write_atomic(p, "second");
    EXPECT_EQ(read_file(p), "second");
    for (const auto& entry : fs::directory_iterator(p.parent_path())) {
        EXPECT_EQ(entry.path().filename(), "x.txt");
    }
}

TEST(Config, LineNumberedErrors) {
    try {
        ConfigDocument::parse("{\n  \"t0\": 0.25,\n  \"dprime\": ,\n}", "cfg.json");
        ADD_FAILURE();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("cfg.json:3"), std::string::npos) << e.what();
    }
    try {
        parse_solve_config(ConfigDocument::parse("{\n\"t0\": 0.25,\n\"colour\": 1}", "c.json"));
        ADD_FAILURE();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("c.json:3"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
    }
    EXPECT_THROW(ConfigDocument::parse("[1, 2]", "a.json"), ConfigError);
    EXPECT_THROW(parse_solve_config(ConfigDocument::parse("{\"t0\": \"x\"}", "b.json")), ConfigError);
}

TEST(Cli, SolveIdentityCoefficientsSumToOne) {
    const auto r = invoke({"solve", "--t0", "0.25", "--dprime", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["coefficients"].size(), 16U);
    double sum = 0.0;
    for (const auto& v : j["coefficients"]) sum += v.get<double>();
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_EQ(j["dprime"], 1);
    for (const char* key : {"variance", "kernel_residual", "reproduction_residual", "cross_route_deviation",
                            "condition_estimate", "ill_conditioned", "route", "grid", "t0"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST(Cli, SolveLowNoiseHalfReducesVariance) {
    const auto id = nlohmann::json::parse(invoke({"solve", "--t0", "0.25", "--dprime", "1"}).out);
    const auto r = invoke({"solve", "--t0", "0.25", "--dprime", "1", "--covariance", "experiment1", "--epsilon", "1e-4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LT(nlohmann::json::parse(r.out)["variance"].get<double>(), id["variance"].get<double>());
}

TEST(Cli, SolveFromConfigWithInlineAndCsvCovariance) {
    TempDir dir;
    const auto cfg = dir.file("c.json", R"({"grid": [0, 1], "t0": 0.5, "dprime": 0, "routes": "small_system",
        "covariance": {"type": "dense", "rows": [[1, 0], [0, 4]]}})");
    auto r = invoke({"solve", "--config", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["coefficients"][0].get<double>(), 0.8, 1e-15);
    EXPECT_EQ(j["route"], "small_system");
    EXPECT_TRUE(j["cross_route_deviation"].is_null());

    const auto csv = dir.file("cov.csv", "1,0\n0,4\n");
    r = invoke({"solve", "--config", cfg.string(), "--covariance-csv", csv.string(), "--out", (dir / "o.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    j = nlohmann::json::parse(read_file(dir / "o.json"));
    EXPECT_NEAR(j["coefficients"][1].get<double>(), 0.2, 1e-15);
}

TEST(Cli, SolveMalformedCovarianceFails) {
    TempDir dir;
    std::string text;
    for (int r = 0; r < 15; ++r) {
        for (int c = 0; c < 16; ++c) text += (c ? "," : "") + std::string(r == c ? "1" : "0");
        text += "\n";
    }
    const auto csv = dir.file("bad.csv", text);
    const auto r = invoke({"solve", "--t0", "0", "--dprime", "1", "--covariance-csv", csv.string()});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("DimensionMismatch"), std::string::npos) << r.err;
}

TEST(Cli, SolveUsageErrors) {
    EXPECT_EQ(invoke({"solve", "--dprime", "1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", "--t0", "0", "--dprime", "-1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", "--t0", "0", "--dprime", "1", "--epsilon", "0.1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", "--t0", "0", "--bogus", "1"}).code, kExitUsage);
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", "--t0", "20", "--dprime", "1"}).code, kExitNumeric);
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, RhoRowsAndClosedForm) {
    const auto r = invoke({"rho", "--experiment", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 1U + 40U * 3U * 4U);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"experiment", "epsilon", "t0", "dprime", "rho"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][3] != "0") continue;
        const double eps = parse_double(rows[i][1]);
        EXPECT_NEAR(parse_double(rows[i][4]), 4.0 * eps / ((1.0 + eps) * (1.0 + eps)), 1e-10);
    }
}

TEST(Cli, RhoSkipsOutOfRangeEpsilon) {
    TempDir dir;
    const auto cfg = dir.file("r.json", R"({"experiments": [2], "epsilons": [0.01, 0.5], "t0s": [0.5], "dprimes": [1]})");
    const auto r = invoke({"rho", "--config", cfg.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(csv_rows(r.out).size(), 2U);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, StarSummaryAndDeterminism) {
    TempDir dir;
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    ASSERT_EQ(invoke({"star", "--variant", "exp1", "--out", a.string()}).code, 0);
    ASSERT_EQ(invoke({"star", "--variant", "exp1", "--out", b.string()}).code, 0);
    EXPECT_EQ(read_file(a), read_file(b));
    const auto rows = csv_rows(read_file(a));
    ASSERT_EQ(rows.size(), 321U);
    EXPECT_EQ(rows[0].size(), 10U);
    const auto summary = nlohmann::json::parse(read_file(a.string() + ".summary.json"));
    EXPECT_EQ(summary["seed"], kCanonicalStarSeed);
    EXPECT_LT(summary["mse_mv"].get<double>(), summary["mse_avg"].get<double>());
}

TEST(Cli, StarUnknownVariantIsUsageError) {
    EXPECT_EQ(invoke({"star", "--variant", "exp7"}).code, kExitUsage);
    EXPECT_EQ(invoke({"star"}).code, kExitUsage);
}

TEST(Cli, SubdivideConstantAndLinear) {
    TempDir dir;
    std::string constant = "index,value\n", linear = "index,value\n";
    for (int i = 0; i < 12; ++i) {
        constant += std::to_string(i) + ",3\n";
        linear += std::to_string(i) + "," + format_double(0.5 * i - 1.0) + "\n";
    }
    auto r = invoke({"subdivide", "--input", dir.file("c.csv", constant).string(), "--levels", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    EXPECT_EQ(rows.size(), 1U + 12U + 24U + 48U + 96U);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(parse_double(rows[i][2]), 3.0, 1e-12);

    r = invoke({"subdivide", "--input", dir.file("l.csv", linear).string(), "--levels", "1", "--dprime", "1",
                "--spacing", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    rows = csv_rows(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] != "1") continue;
        const int idx = std::stoi(rows[i][1]);
        // Stencils that do not cross the periodic seam.
        if (idx / 2 < 1 || idx / 2 + 2 > 11) continue;
        EXPECT_NEAR(parse_double(rows[i][2]), 0.25 * idx - 1.0, 1e-9) << "index " << idx;
    }
}

TEST(Cli, SubdivideGuards) {
    TempDir dir;
    std::string eight;
    for (int i = 0; i < 8; ++i) eight += std::to_string(i) + ",1\n";
    const auto in = dir.file("e.csv", eight).string();
    const auto r = invoke({"subdivide", "--input", in, "--n", "8"});
    EXPECT_EQ(r.code, kExitNumeric);
    EXPECT_NE(r.err.find("StencilTooWide"), std::string::npos);
    EXPECT_EQ(invoke({"subdivide", "--input", in, "--levels", "9"}).code, kExitUsage);
    EXPECT_EQ(invoke({"subdivide"}).code, kExitUsage);
}
