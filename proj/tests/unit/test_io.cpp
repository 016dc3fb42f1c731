#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qwr/error.hpp"
#include "qwr/fixtures.hpp"
#include "qwr/io.hpp"

using qwr::SparseBitMatrix;

namespace {

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "qwr_io_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

// Hamming [7,4] checks in alist form, written by hand.
const char *kHammingAlist =
    "7 3\n"
    "3 4\n"
    "1 1 1 2 2 2 3\n"
    "4 4 4\n"
    "1 0 0\n2 0 0\n3 0 0\n1 2 0\n1 3 0\n2 3 0\n1 2 3\n"
    "1 4 5 7\n2 4 6 7\n3 5 6 7\n";

}  // namespace

TEST(CodeJson, RoundTripsFixtures) {
    for (const auto &code : {qwr::fixtures::toric(3), qwr::fixtures::steane(), qwr::fixtures::fig1(6),
                             qwr::fixtures::punctured_sphere(3)}) {
        const auto j = qwr::code_to_json(code);
        const auto back = qwr::code_from_json(j);
        EXPECT_EQ(back, code);
        EXPECT_EQ(qwr::dump_json(qwr::code_to_json(back)), qwr::dump_json(j));
        EXPECT_EQ(back.meta(), code.meta());
    }
}

TEST(CodeJson, ExplicitExample) {
    auto code = qwr::code_from_json(nlohmann::json::parse(R"({"n": 3, "hx": [[1, 0]], "hz": [[2, 0, 1]]})"));
    EXPECT_EQ(code.n(), 3U);
    ASSERT_EQ(code.hx().rows(), 1U);
    EXPECT_EQ(std::vector<std::size_t>(code.hx().row(0).begin(), code.hx().row(0).end()),
              (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(qwr::code_to_json(code)["hz"], nlohmann::json::parse("[[0, 1, 2]]"));
    auto bare = qwr::code_from_json(nlohmann::json::parse(R"({"n": 2})"));
    EXPECT_EQ(bare.hx().rows(), 0U);
    EXPECT_EQ(bare.hz().cols(), 2U);
}

TEST(CodeJson, RejectsMalformedInput) {
    auto bad = [](const char *text) { return qwr::code_from_json(nlohmann::json::parse(text)); };
    EXPECT_THROW(bad("[1, 2]"), qwr::DomainError);
    EXPECT_THROW(bad(R"({"hx": []})"), qwr::DomainError);
    EXPECT_THROW(bad(R"({"n": -1})"), qwr::DomainError);
    EXPECT_THROW(bad(R"({"n": 2, "hx": [[0, 2]]})"), qwr::DomainError);
    EXPECT_THROW(bad(R"({"n": 2, "hx": [0, 1]})"), qwr::DomainError);
    EXPECT_THROW(bad(R"({"n": 2, "hx": [["a"]]})"), qwr::DomainError);
    EXPECT_THROW(bad(R"({"n": 2, "hx": [[0, 0]]})"), qwr::DomainError);
    EXPECT_THROW(bad(R"({"n": 2, "extra": 1})"), qwr::DomainError);
    try {
        bad(R"({"n": 2, "hz": [[5]]})");
    } catch (const qwr::DomainError &e) {
        EXPECT_EQ(e.kind(), qwr::errors::kIndexOutOfRange);
        return;
    }
    FAIL() << "expected an out-of-range index error";
}

TEST(Alist, ReadsHandWrittenHamming) {
    std::istringstream in(kHammingAlist);
    auto h = qwr::read_alist(in);
    EXPECT_EQ(h.rows(), 3U);
    EXPECT_EQ(h.cols(), 7U);
    EXPECT_EQ(h, SparseBitMatrix(3, 7, {{0, 3, 4, 6}, {1, 3, 5, 6}, {2, 4, 5, 6}}));
}

TEST(Alist, RoundTripsRandomMatrices) {
    std::mt19937_64 gen(8);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t rows = 1 + gen() % 9;
        const std::size_t cols = 1 + gen() % 14;
        std::vector<std::vector<std::size_t>> s(rows);
        for (auto &row : s) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (gen() % 3 == 0) row.push_back(c);
            }
        }
        SparseBitMatrix m(rows, cols, s);
        std::istringstream in(qwr::write_alist(m));
        EXPECT_EQ(qwr::read_alist(in), m);
    }
}

TEST(Alist, RejectsInconsistentLists) {
    std::string text = kHammingAlist;
    text.replace(text.find("3 5 6 7"), 7, "3 5 6 1");
    std::istringstream in(text);
    EXPECT_THROW(qwr::read_alist(in), qwr::DomainError);
    std::istringstream truncated("7 3\n3 4\n1 1");
    EXPECT_THROW(qwr::read_alist(truncated), qwr::DomainError);
}

TEST(CodeFile, JsonAndAlistDetection) {
    const auto json_path = scratch("steane.json").string();
    qwr::write_code_file(json_path, qwr::fixtures::steane());
    EXPECT_EQ(qwr::read_code_file(json_path), qwr::fixtures::steane());

    const auto alist_path = scratch("hamming.alist").string();
    {
        std::ofstream out(alist_path);
        out << kHammingAlist;
    }
    auto code = qwr::read_code_file(alist_path);
    EXPECT_EQ(code.n(), 7U);
    EXPECT_EQ(code.hx().rows(), 3U);
    EXPECT_EQ(code.hz().rows(), 0U);

    const auto broken = scratch("broken.json").string();
    {
        std::ofstream out(broken);
        out << "{\"n\": 3, ";
    }
    EXPECT_THROW(qwr::read_code_file(broken), qwr::DomainError);
    EXPECT_THROW(qwr::read_code_file(scratch("missing.json").string()), qwr::DomainError);
}

TEST(JsonFile, StableBytes) {
    nlohmann::json j = {{"b", 1}, {"a", {1, 2}}, {"c", 0.5}};
    const auto path = scratch("stable.json").string();
    qwr::write_json_file(path, j);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1,\n  \"c\": 0.5\n}\n");
    EXPECT_EQ(qwr::read_json_file(path), j);
}
