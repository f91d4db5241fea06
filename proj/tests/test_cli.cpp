#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "common.hpp"
#include "report.hpp"

using stokes::cli::Json;
using stokes::cli::Report;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(STOKES_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

Json run_json(const std::string& args, int expected_status = 0) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.status, expected_status) << args;
    return Json::parse(r.out);
}

} // namespace

TEST(Cli, VerifyBracketSmallest) {
    const auto j = run_json("verify-bracket --family an --n 3");
    EXPECT_EQ(j["status"], "pass");
    ASSERT_EQ(j["records"].size(), 3u);
    for (const auto& r : j["records"]) {
        EXPECT_EQ(r["check"], "goldman-bracket-equals-reference-bracket");
        EXPECT_EQ(r["difference_terms"], 0);
    }
}

TEST(Cli, LeafDimensionOddCfp) {
    const auto j = run_json("leaf-dim --family cfp --n 7 --samples 10 --seed 7");
    ASSERT_EQ(j["records"].size(), 10u);
    for (const auto& r : j["records"]) EXPECT_EQ(r["leaf_dim"].get<double>(), 14.0);
}

TEST(Cli, MissingConfigAndUnknownCommand) {
    EXPECT_EQ(run_cli("run --config /nonexistent/missing.json").status, 2);
    EXPECT_EQ(run_cli("no-such-command").status, 2);
    EXPECT_EQ(run_cli("jordan --emit yaml").status, 2);
    EXPECT_EQ(run_cli("markov --family cfp --n 5").status, 2);
    EXPECT_EQ(run_cli("stokes --family an --n 4 --Z 1,2").status, 2);
    EXPECT_EQ(run_cli("--help").status, 0);
}

TEST(Cli, ConfigFileMatchesFlags) {
    const std::string path = ::testing::TempDir() + "stokes_cli_config.json";
    std::ofstream(path) << R"({"command":"stokes","family":"An","n":3,"Z":[1,0,0],"Y":[]})";
    const auto a = run_cli("run --config " + path), b = run_cli("stokes --family An --n 3 --Z 1,0,0");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(Json::parse(a.out)["records"], Json::parse(b.out)["records"]);
}

TEST(Cli, ContractFailureReportsCounterexample) {
    const auto j = run_json("pvi-check --seed 0 --mu 0.3 --step 0.01", 1);
    EXPECT_EQ(j["status"], "fail");
    ASSERT_TRUE(j.contains("first_counterexample"));
    EXPECT_EQ(j["first_counterexample"]["check"], "painleve-vi-residual");
}

TEST(Cli, DeterministicAcrossRunsAndJobs) {
    const auto a = run_cli("jordan --family cfp --n 6 --samples 4 --seed 3");
    const auto b = run_cli("jordan --family cfp --n 6 --samples 4 --seed 3");
    const auto c = run_cli("jordan --family cfp --n 6 --samples 4 --seed 3 --jobs 3");
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    EXPECT_NE(a.out, run_cli("jordan --family cfp --n 6 --samples 4 --seed 4").out);
}

TEST(Cli, TextAndCsvFormats) {
    const auto text = run_cli("markov --Z 1,0,0 --emit text");
    EXPECT_EQ(text.status, 0);
    EXPECT_NE(text.out.find("PASS markov-element-equals-perimeter-form"), std::string::npos);
    const auto csv = run_cli("rank --family an --n 5 --samples 3 --emit csv");
    std::istringstream lines(csv.out);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header.rfind("check,", 0), 0u);
    int rows = 0;
    for (std::string line; std::getline(lines, line);) rows += !line.empty();
    EXPECT_EQ(rows, 3);
}

TEST(Cli, EveryRecordNamesItsCheck) {
    for (const char* args : {"casimir --family an --n 4", "dual-monodromy --n 3 --samples 2",
                             "isospectral --samples 3", "char-identity --family cfp --n 5 --samples 2"}) {
        const auto j = run_json(args);
        for (const auto& r : j["records"]) {
            EXPECT_TRUE(r.contains("check")) << args;
            EXPECT_TRUE(r["pass"].is_boolean()) << args;
        }
    }
}

TEST(Report, RequiresCheckAndPass) {
    Report r("x", Json::object());
    EXPECT_THROW(r.add(Json{{"pass", true}}), std::logic_error);
    EXPECT_THROW(r.add(Json{{"check", "a"}}), std::logic_error);
    r.add(Json{{"check", "a"}, {"pass", true}});
    EXPECT_EQ(r.status(), 0);
    r.add(Json{{"check", "b"}, {"pass", false}, {"why", "x"}});
    EXPECT_EQ(r.status(), 1);
}

TEST(Report, CsvEscapesAndUnionsColumns) {
    Report r("x", Json::object());
    r.add(Json{{"check", "a"}, {"pass", true}, {"note", "has,comma"}});
    r.add(Json{{"check", "b"}, {"pass", true}, {"extra", "q\"uote"}});
    std::ostringstream os;
    r.emit(os, stokes::cli::Format::Csv);
    EXPECT_EQ(os.str(), "check,pass,note,extra\na,true,\"has,comma\",\nb,true,,\"q\"\"uote\"\n");
}

TEST(Options, ParsingHelpers) {
    EXPECT_EQ(stokes::cli::parse_list("1, 2.5,-3"), (std::vector<double>{1, 2.5, -3}));
    EXPECT_THROW(stokes::cli::parse_list("1,x"), stokes::cli::UsageError);
    EXPECT_EQ(stokes::cli::parse_complex("0.5,-1"), std::complex<double>(0.5, -1));
    auto a = stokes::cli::sample_rng(5, 2), b = stokes::cli::sample_rng(5, 2), c = stokes::cli::sample_rng(5, 3);
    EXPECT_EQ(a(), b());
    EXPECT_NE(stokes::cli::sample_rng(5, 2)(), c());
}
