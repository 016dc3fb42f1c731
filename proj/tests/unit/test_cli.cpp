#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "qwr/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status = 0;
    std::string out;
    std::string err;
};

Outcome qwr_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Outcome o;
    o.status = qwr::cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("qwr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ValidateSteane) {
    ASSERT_EQ(qwr_run({"gen-fixture", "steane", path("steane.json")}).status, 0);
    auto o = qwr_run({"validate", path("steane.json")});
    ASSERT_EQ(o.status, 0) << o.err;
    auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["n"], 7);
    EXPECT_EQ(j["k"], 1);
    EXPECT_EQ(j["w_x"], 4);
    EXPECT_EQ(j["q_z"], 3);
}

TEST_F(Cli, DomainErrorsExitOneWithJson) {
    {
        std::ofstream out(path("broken.json"));
        out << R"({"n": 2, "hx": [[0, 1]], "hz": [[0]]})";
    }
    auto o = qwr_run({"validate", path("broken.json")});
    EXPECT_EQ(o.status, 1);
    auto j = nlohmann::json::parse(o.err);
    EXPECT_EQ(j["error"], "CommutationViolation");
    EXPECT_EQ(j["detail"]["z_stabilizer"], 0);

    auto missing = qwr_run({"validate", path("nothing.json")});
    EXPECT_EQ(missing.status, 1);
    EXPECT_EQ(nlohmann::json::parse(missing.err)["error"], "ParseError");

    ASSERT_EQ(qwr_run({"gen-fixture", "toric", path("t.json"), "--size", "2"}).status, 0);
    auto bad_ell = qwr_run({"thicken", path("t.json"), path("o.json"), "--heights", "zero", "--ell", "1"});
    EXPECT_EQ(bad_ell.status, 1);
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(qwr_run({}).status, 2);
    EXPECT_EQ(qwr_run({"validate"}).status, 2);
    EXPECT_EQ(qwr_run({"frobnicate"}).status, 2);
    EXPECT_EQ(qwr_run({"distance", "x.json", "--kind", "y"}).status, 2);
    EXPECT_EQ(qwr_run({"reduce", "x.json", "--seed", "minus"}).status, 2);
    auto o = qwr_run({"reduce", "a.json", "--bogus"});
    EXPECT_EQ(o.status, 2);
    EXPECT_NE(o.err.find("--bogus"), std::string::npos);
    EXPECT_EQ(qwr_run({"--help"}).status, 0);
}

TEST_F(Cli, GenFixtureToricTwo) {
    ASSERT_EQ(qwr_run({"gen-fixture", "toric", path("t2.json"), "--size", "2"}).status, 0);
    const auto code = qwr::read_code_file(path("t2.json"));
    EXPECT_EQ(code.n(), 8U);
    EXPECT_EQ(oracle::k_of(code), 2U);
    auto sphere = qwr_run({"gen-fixture", "punctured-sphere", "--size", "3"});
    ASSERT_EQ(sphere.status, 0);
    EXPECT_EQ(oracle::k_of(qwr::code_from_json(nlohmann::json::parse(sphere.out))), 1U);
}

TEST_F(Cli, ReduceIsByteDeterministicAndRoundTrips) {
    ASSERT_EQ(qwr_run({"gen-fixture", "toric", path("toric3.json"), "--size", "3"}).status, 0);
    std::vector<std::string> args{"reduce", path("toric3.json"), path("out.json"), "--seed", "7", "--report",
                                  path("reports.json")};
    ASSERT_EQ(qwr_run(args).status, 0);
    const auto out1 = slurp(path("out.json"));
    const auto rep1 = slurp(path("reports.json"));
    ASSERT_EQ(qwr_run(args).status, 0);
    EXPECT_EQ(slurp(path("out.json")), out1);
    EXPECT_EQ(slurp(path("reports.json")), rep1);

    const auto code = qwr::read_code_file(path("out.json"));
    EXPECT_EQ(qwr::dump_json(qwr::code_to_json(code)), out1);
    const auto reports = nlohmann::json::parse(rep1);
    EXPECT_EQ(qwr::dump_json(reports), rep1);
    EXPECT_EQ(reports["tool"]["name"], "qwr");
    EXPECT_FALSE(reports["tool"]["version"].get<std::string>().empty());
    EXPECT_EQ(reports["command"], "reduce");
    EXPECT_EQ(reports["arguments"]["seed"], "7");
    EXPECT_EQ(reports["config"]["heights"], "random");
    EXPECT_EQ(reports["steps"].back()["step"], "reduce-full");
    EXPECT_EQ(reports["steps"].back()["params_after"]["k"], 2);
}

TEST_F(Cli, ReduceConfigFile) {
    ASSERT_EQ(qwr_run({"gen-fixture", "steane", path("s.json")}).status, 0);
    {
        std::ofstream out(path("cfg.json"));
        out << R"({"heights": "coloring", "copy_gauge": false})";
    }
    ASSERT_EQ(qwr_run({"reduce", path("s.json"), path("o.json"), "--config", path("cfg.json"), "--report",
                       path("r.json")})
                  .status,
              0);
    auto r = qwr::read_json_file(path("r.json"));
    EXPECT_EQ(r["steps"][0]["step"], "thicken");
    EXPECT_EQ(r["config"]["heights"], "coloring");
    {
        std::ofstream out(path("bad.json"));
        out << R"({"hieghts": "coloring"})";
    }
    auto bad = qwr_run({"reduce", path("s.json"), path("o.json"), "--config", path("bad.json")});
    EXPECT_EQ(bad.status, 1);
    EXPECT_EQ(nlohmann::json::parse(bad.err)["error"], "InvalidArgument");
}

TEST_F(Cli, SeededCommandsAreDeterministic) {
    ASSERT_EQ(qwr_run({"gen-fixture", "toric", path("t.json"), "--size", "3"}).status, 0);
    ASSERT_EQ(qwr_run({"gen-fixture", "fig1", path("f.json"), "--size", "6"}).status, 0);
    const std::vector<std::vector<std::string>> commands{
        {"random", path("a.json"), "--n", "32", "--beta", "2", "--seed", "3", "--diagnostics", path("d.json")},
        {"thicken", path("t.json"), path("a.json"), "--ell", "9", "--w", "1", "--seed", "5", "--report", path("d.json")},
        {"cone", path("f.json"), path("a.json"), "--seed", "2", "--report", path("d.json")},
        {"improve-soundness", path("f.json"), path("a.json"), "--target-h", "1/2", "--seed", "4", "--report",
         path("d.json")},
        {"distance", path("t.json"), "--kind", "z", "--method", "estimate", "--trials", "5", "--seed", "1"},
        {"reduce-applic", "--n", "16", "--beta", "1", "--seed", "2", "--out", path("a.json"), "--report",
         path("d.json")},
    };
    for (const auto &args : commands) {
        auto first = qwr_run(args);
        ASSERT_EQ(first.status, 0) << args.front() << ": " << first.err;
        const auto a1 = slurp(path("a.json"));
        const auto d1 = slurp(path("d.json"));
        auto second = qwr_run(args);
        ASSERT_EQ(second.status, 0);
        EXPECT_EQ(first.out, second.out) << args.front();
        EXPECT_EQ(slurp(path("a.json")), a1) << args.front();
        EXPECT_EQ(slurp(path("d.json")), d1) << args.front();
        fs::remove(path("a.json"));
        fs::remove(path("d.json"));
    }
}

TEST_F(Cli, DistanceAndParams) {
    ASSERT_EQ(qwr_run({"gen-fixture", "steane", path("s.json")}).status, 0);
    auto o = qwr_run({"distance", path("s.json"), "--kind", "x"});
    ASSERT_EQ(o.status, 0) << o.err;
    auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["value"], 3);
    EXPECT_EQ(j["method"], "exact");
    EXPECT_EQ(j["kind"], "x");
    auto p = qwr_run({"params", path("s.json"), "--distance", "exact"});
    ASSERT_EQ(p.status, 0);
    auto pj = nlohmann::json::parse(p.out);
    EXPECT_EQ(pj["d_x"]["value"], 3);
    EXPECT_EQ(pj["d_z"]["value"], 3);
}

TEST_F(Cli, ThickenMarksDirectStabilizersForCone) {
    ASSERT_EQ(qwr_run({"gen-fixture", "toric", path("t.json"), "--size", "2"}).status, 0);
    ASSERT_EQ(qwr_run({"thicken", path("t.json"), path("th.json"), "--heights", "coloring"}).status, 0);
    const auto th = qwr::read_code_file(path("th.json"));
    ASSERT_TRUE(th.meta().contains("direct_z"));
    const auto direct = th.meta()["direct_z"].size();
    EXPECT_EQ(direct, th.hz().rows() - 4);
    ASSERT_EQ(qwr_run({"cone", path("th.json"), path("c.json"), "--report", path("r.json")}).status, 0);
    auto r = qwr::read_json_file(path("r.json"));
    EXPECT_EQ(r["steps"][0]["config"]["direct_z"], direct);
    EXPECT_EQ(r["steps"][1]["step"], "reduce-cone");
    EXPECT_FALSE(qwr::read_code_file(path("c.json")).meta().contains("direct_z"));
    EXPECT_EQ(r["steps"][1]["params_after"]["k"], 2);
}

TEST_F(Cli, ConnectAndAlistInput) {
    ASSERT_EQ(qwr_run({"gen-fixture", "punctured-sphere", path("p.json"), "--size", "3", "--joint"}).status, 0);
    auto o = qwr_run({"connect", path("p.json"), path("c.json"), "--report", path("r.json")});
    ASSERT_EQ(o.status, 0) << o.err;
    EXPECT_EQ(qwr::read_json_file(path("r.json"))["steps"][0]["params_after"]["k"], 1);
    {
        std::ofstream out(path("h.alist"));
        out << "7 3\n3 4\n1 1 1 2 2 2 3\n4 4 4\n1\n2\n3\n1 2\n1 3\n2 3\n1 2 3\n1 4 5 7\n2 4 6 7\n3 5 6 7\n";
    }
    auto v = qwr_run({"validate", path("h.alist")});
    ASSERT_EQ(v.status, 0) << v.err;
    EXPECT_EQ(nlohmann::json::parse(v.out)["k"], 4);
}
