#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "txh/cli.hpp"
#include "txh/report.hpp"

using nlohmann::json;

namespace {

const std::string kDataDir = TXH_DATA_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "txh");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = txh::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Data rows of a CSV report, split on commas (no quoted cells expected).
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() / ("txh_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST(Cli, VarianceExample) {
    const auto r = run({"variance", "--q", "1", "--R", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0][0], "q");
    EXPECT_EQ(rows[1][1], "underdamped");
    EXPECT_NEAR(std::stod(rows[1][2]), 0.604600, 5e-7);
    EXPECT_NEAR(std::stod(rows[1][3]), 0.604600, 5e-7);
    EXPECT_NE(r.out.find("# param R=1"), std::string::npos);
    EXPECT_NE(r.out.find(std::string("# txh ") + txh::cli::kVersion), std::string::npos);
}

TEST(Cli, VarianceFlagsInJson) {
    const auto r = run({"variance", "--q", "0.5", "--q", "100", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j["flags"].size(), 2u);
    EXPECT_EQ(j["flags"][0]["id"], "critical_quoted_mismatch");
    EXPECT_NEAR(j["flags"][0]["computed"].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(j["flags"][0]["quoted"].get<double>(), 1.5707963267948966, 1e-15);
    EXPECT_EQ(j["flags"][1]["id"], "large_q_quoted_mismatch");
    EXPECT_NEAR(j["flags"][1]["scaled_ratio"].get<double>(), 1.0, 0.01);
    EXPECT_EQ(j["rows"][0]["flag"], "critical_quoted_mismatch");
    EXPECT_TRUE(j["rows"][0]["cmera_weighted"].is_null());
}

TEST(Cli, VarianceWeighted) {
    const auto r = run({"variance", "--q", "1", "--gamma", "2", "--lambda-cutoff", "1e9", "--lt-over-l", "1",
                        "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["rows"][0]["cmera_weighted"].get<double>() / (2 * j["rows"][0]["closed"].get<double>()), 1.0, 1e-4);
}

TEST(Cli, GeometryLambda) {
    const auto r = run({"geometry", "--beta", "0", "--z-min", "0.1", "--z-max", "10", "--steps", "64"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 65u);
    const auto& head = rows[0];
    const auto col = std::find(head.begin(), head.end(), "lambda") - head.begin();
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::stod(rows[i][col]), -4.0, 5e-7);
    EXPECT_EQ(r.out.find("# flag"), std::string::npos);
}

TEST(Cli, GeometryFlagsTraceMismatch) {
    const auto r = run({"geometry", "--beta", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["flags"][0]["id"], "lambda_trace_mismatch");
}

TEST(Cli, ScatterSingleLine) {
    const auto r = run({"scatter", "--network", kDataDir + "/single_line.cfg", "--omega", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(std::stod(rows[1][5]), 1.0, 1e-15);
}

TEST(Cli, ScatterThreeLineSweep) {
    const auto r = run({"scatter", "--network", kDataDir + "/three_line.cfg", "--omega-min", "0.1",
                        "--omega-max", "10", "--steps", "5", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 45u);
    for (const auto& row : j["rows"]) EXPECT_LE(row["unitarity_defect"].get<double>(), 1e-10);
}

TEST(Cli, CmeraTables) {
    auto r = run({"cmera", "--modes", "128"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    EXPECT_EQ(rows.size(), 129u);
    r = run({"cmera", "--end-l", "1", "--end-c", "1", "--table", "flow", "--steps", "8", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 8u);
    EXPECT_NEAR(j["rows"][7]["g_uu"].get<double>(), 1.0 / 16.0, 1e-12);
}

TEST(Cli, CmeraEndpointFlagsUnloadedApproximation) {
    const auto r = run({"cmera", "--end-l", "1", "--end-c", "1", "--modes", "64", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["flags"][0]["id"], "unloaded_approximation");
}

TEST(Cli, PropagatorAndBoundary) {
    auto r = run({"propagator", "--beta", "1", "--steps", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (std::size_t i = 1; i < 9; ++i) EXPECT_LE(std::abs(std::stod(csv_rows(r.out)[i][3])), 1e-12);
    r = run({"propagator", "--boundary", kDataDir + "/boundary_gaussian.csv", "--z", "0.5", "--z", "1",
             "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 2u);
    EXPECT_GT(j["rows"][0]["value"].get<double>(), 0.0);
}

TEST(Cli, Entropy) {
    const auto r = run({"entropy", "--a", "0.01", "--xi", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(csv_rows(r.out)[1][2]), 6.907755, 1e-6);
}

TEST(Cli, LineTable) {
    const auto r = run({"line", "--line-l", "4", "--line-c", "1", "--k-min", "1", "--k-max", "2", "--steps", "2",
                        "--spacing", "linear"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[2][1], "1");
    EXPECT_NE(r.out.find("# param Z_T=2"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run({"variance", "--q", "-1"}).code, 2);
    EXPECT_EQ(run({"geometry", "--steps", "1"}).code, 2);
    EXPECT_EQ(run({"geometry", "--steps", "8"}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"variance", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"scatter", "--omega", "1"}).code, 2);
    const auto dir = temp_dir();
    const auto bad = (dir / "bad.cfg").string();
    std::ofstream(bad) << "[lines]\n1 1 1\n2 1 1\n[mutual_inductance]\n1 1 1\n2 2 1\n1 2 0.5\n2 1 0.1\n"
                          "[elastance]\n1 1 1\n2 2 1\n";
    const auto r = run({"scatter", "--network", bad, "--omega", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("(1,2)"), std::string::npos) << r.err;
    std::filesystem::remove_all(dir);
}

TEST(Cli, NumericalErrorsExitThree) {
    const auto e = run({"variance", "--q", "1e-300"});
    EXPECT_EQ(e.code, 3) << e.err;
    EXPECT_NE(e.err.find("charge_variance"), std::string::npos) << e.err;
    EXPECT_EQ(run({"entropy", "--a", "1e-300", "--xi", "1e300"}).code, 3);
    EXPECT_EQ(run({"cmera", "--lambda-cutoff", "1e300"}).code, 3);
}

TEST(Cli, AtomicFileOutputAndDeterminism) {
    const auto dir = temp_dir();
    const auto a = (dir / "a.csv").string();
    const auto b = (dir / "b.csv").string();
    ASSERT_EQ(run({"variance", "--q-min", "0.2", "--q-max", "20", "--steps", "9", "--out", a, "--timestamp"}).code, 0);
    ASSERT_EQ(run({"variance", "--q-min", "0.2", "--q-max", "20", "--steps", "9", "--out", b}).code, 0);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const auto ta = slurp(a), tb = slurp(b);
    EXPECT_NE(ta, tb);
    EXPECT_NE(ta.find("# generated_at:"), std::string::npos);
    EXPECT_EQ(txh::io::data_section(ta), txh::io::data_section(tb));
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        EXPECT_EQ(entry.path().string().find(".tmp."), std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
    const std::vector<std::string> args{"scatter", "--network", kDataDir + "/three_line.cfg", "--steps", "40"};
    ::setenv("TXH_THREADS", "1", 1);
    const auto one = run(args);
    ::setenv("TXH_THREADS", "8", 1);
    const auto many = run(args);
    ::unsetenv("TXH_THREADS");
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out, many.out);
}

TEST(Report, CsvQuoting) {
    txh::io::Report r;
    r.command = "x";
    r.version = "v";
    r.columns = {"a", "b"};
    r.rows.push_back({std::string("has,comma"), std::string("say \"hi\"")});
    r.rows.push_back({0.1, -0.0});
    const auto text = txh::io::to_csv(r);
    EXPECT_NE(text.find("\"has,comma\",\"say \"\"hi\"\"\""), std::string::npos) << text;
    EXPECT_NE(text.find("0.10000000000000001,0\n"), std::string::npos) << text;
}

TEST(Report, NumberFormatRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
        EXPECT_EQ(std::stod(txh::io::format_number(v)), v);
    }
}
