#include "besovlab/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<const char*> args) {
    args.insert(args.begin(), "besovlab");
    std::ostringstream out, err;
    int code = besov::cli::run(int(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
    auto d = std::filesystem::temp_directory_path() / "besovlab_cli";
    std::filesystem::create_directories(d);
    return d;
}

// exit status of the installed binary
int shell(const std::string& args) {
    int s = std::system((std::string(BESOVLAB_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

}  // namespace

TEST(Cli, VerdictPrintsJson) {
    auto r = run({"verdict", "--t", "0", "--p", "2", "--q", "2", "--d", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["status"], "Embeds");
    EXPECT_EQ(j["clause"], besov::clause::kT31Q);
}

TEST(Cli, VerdictOtherDirection) {
    auto r = run({"verdict", "--direction", "b2s", "--t", "-1", "--p", "2", "--q", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "ReverseEmbeds");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"verdict", "--t", "0", "--p", "0", "--q", "2"}).code, 2);
    EXPECT_EQ(run({"verdict", "--t", "0", "--p", "2"}).code, 2);
    EXPECT_EQ(run({"verdict", "--t", "0", "--p", "2", "--q", "2", "--bogus"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    auto r = run({"verdict", "--t", "0", "--p", "-3", "--q", "2"});
    EXPECT_NE(r.err.find("exponent"), std::string::npos);
    EXPECT_EQ(run({"regions", "--figure", "3"}).code, 2);
    EXPECT_EQ(run({"witness", "--case", "nope"}).code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, IoFailuresExitOne) {
    EXPECT_EQ(run({"norm", "--input", "/nonexistent/f.bin", "--space", "iso", "--t", "0", "--p", "1", "--q", "1"}).code, 1);
}

TEST(Cli, RegionsAndCases) {
    auto r = run({"regions", "--figure", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_FALSE(nlohmann::json::parse(r.out)["regions"].empty());
    auto c = run({"cases"});
    ASSERT_EQ(c.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(c.out)["clause_coverage"].empty());
}

TEST(Cli, ExampleThenNorm) {
    auto dir = scratch();
    auto spec = std::string(BESOVLAB_SAMPLES) + "/example_e2.json";
    auto bin = (dir / "e2.bin").string();
    auto e = run({"example", "--spec", spec.c_str(), "--n", "64", "--R", "1.5707963267948966", "--out", bin.c_str()});
    ASSERT_EQ(e.code, 0) << e.err;
    auto n = run({"norm", "--input", bin.c_str(), "--space", "iso", "--t", "0", "--p", "inf", "--q", "1"});
    ASSERT_EQ(n.code, 0) << n.err;
    auto j = nlohmann::json::parse(n.out);
    // E2 with a = (1, 1, 1): sum of coefficients at t = 0
    EXPECT_NEAR(j["value"].get<double>(), 3.0, 1e-9);
    auto csv = run({"norm", "--input", bin.c_str(), "--space", "mixed", "--t", "0", "--p", "inf", "--q", "inf", "--emit", "csv"});
    ASSERT_EQ(csv.code, 0);
    EXPECT_FALSE(csv.out.empty());
}

TEST(Cli, WitnessCsvToFile) {
    auto out = (scratch() / "w.csv").string();
    auto r = run({"witness", "--case", "T31-pinf-q-gt-1", "--lmin", "4", "--lmax", "5", "--out", out.c_str()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto tabs = besov::read_csv_report(out);
    ASSERT_EQ(tabs.size(), 1u);
    EXPECT_EQ(tabs[0].rows.size(), 2u);
}

TEST(Cli, ProbeIsSeeded) {
    auto a = run({"--seed", "7", "probe-multiplier", "--jmin", "2", "--jmax", "3", "--trials", "3"});
    auto b = run({"probe-multiplier", "--seed", "7", "--jmin", "2", "--jmax", "3", "--trials", "3"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ConfigFile) {
    auto cfg = std::string(BESOVLAB_SAMPLES) + "/config.json";
    EXPECT_EQ(run({"--config", cfg.c_str(), "cases"}).code, 0);
    auto bad = (scratch() / "bad.json").string();
    std::ofstream(bad) << R"({"witness_tol": 1e-3, "surprise": 1})";
    EXPECT_EQ(run({"--config", bad.c_str(), "cases"}).code, 2);
}

TEST(Cli, BinaryExitCodes) {
    EXPECT_EQ(shell("verdict --t 0 --p 2 --q 2"), 0);
    EXPECT_EQ(shell("verdict --t 0 --p 0 --q 2"), 2);
    EXPECT_EQ(shell("verdict --nope"), 2);
}
