#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qwr/copy_gauge.hpp"
#include "qwr/distance.hpp"
#include "qwr/fixtures.hpp"

using qwr::CssCode;
using qwr::PauliKind;
using qwr::SparseBitMatrix;

TEST(CopyGauge, SingleStabilizerChain) {
    CssCode code(4, SparseBitMatrix(1, 4, {{0, 1, 2, 3}}), SparseBitMatrix(0, 4));
    auto r = qwr::x_reduce(code);
    EXPECT_EQ(r.plan.copies, 1U);
    EXPECT_EQ(r.code.n(), 7U);
    ASSERT_EQ(r.code.hx().rows(), 4U);
    std::vector<std::size_t> weights;
    for (std::size_t i = 0; i < 4; ++i) weights.push_back(r.code.hx().row(i).size());
    EXPECT_EQ(weights, (std::vector<std::size_t>{2, 3, 3, 2}));
    EXPECT_EQ(oracle::k_of(r.code), oracle::k_of(code));
}

TEST(CopyGauge, WeightOneStabilizerGetsNoNewQubits) {
    CssCode code(2, SparseBitMatrix(1, 2, {{1}}), SparseBitMatrix(0, 2));
    auto r = qwr::x_reduce(code);
    EXPECT_EQ(r.code.n(), 2U);
    ASSERT_EQ(r.code.hx().rows(), 1U);
    EXPECT_EQ(r.code.hx().row(0).size(), 1U);
}

TEST(CopyGauge, SteaneBoundsAndLogicals) {
    auto steane = qwr::fixtures::steane();
    auto r = qwr::x_reduce(steane);
    auto p = qwr::validate(r.code);
    EXPECT_EQ(p.k, 1U);
    EXPECT_EQ(oracle::k_of(r.code), 1U);
    EXPECT_LE(p.w_x, 3U);
    EXPECT_LE(p.q_x, 3U);
    EXPECT_TRUE(r.report.satisfied());
    auto dz = qwr::distance_exact(r.code, PauliKind::Z);
    ASSERT_EQ(dz.method, qwr::DistanceMethod::Exact);
    EXPECT_GE(*dz.value, 3U * 3U);
}

TEST(CopyGauge, ToricDistances) {
    auto toric = qwr::fixtures::toric(3);
    auto r = qwr::x_reduce(toric);
    EXPECT_EQ(oracle::k_of(r.code), 2U);
    auto dz = qwr::distance_exact(r.code, PauliKind::Z, 1U << 26);
    auto dx = qwr::distance_exact(r.code, PauliKind::X, 1U << 26);
    ASSERT_EQ(dz.method, qwr::DistanceMethod::Exact);
    ASSERT_EQ(dx.method, qwr::DistanceMethod::Exact);
    EXPECT_GE(*dz.value, 6U);
    // Multiplying by copied stabilizers inflates an X-logical by at most w_X.
    EXPECT_GE(*dx.value * 4, 3U);
    EXPECT_GE(*dx.value, 1U);
}

TEST(CopyGauge, ZStabilizersProjectToCopiedRepetitionLogicals) {
    // Restricted to copied qubits, each rebuilt Z-stabilizer is the product of
    // all copies of the original support.
    for (const auto &code : {qwr::fixtures::toric(3), qwr::fixtures::steane(), qwr::fixtures::fig1(6)}) {
        auto r = qwr::x_reduce(code);
        const auto copies = r.plan.copies;
        for (std::size_t z = 0; z < code.hz().rows(); ++z) {
            std::vector<std::size_t> expected;
            for (auto q : code.hz().row(z)) {
                for (std::size_t j = 0; j < copies; ++j) expected.push_back(q * copies + j);
            }
            std::vector<std::size_t> restricted;
            for (auto q : r.code.hz().row(z)) {
                if (q < code.n() * copies) restricted.push_back(q);
            }
            EXPECT_EQ(restricted, expected);
        }
        EXPECT_TRUE(r.report.satisfied());
    }
}

TEST(CopyGauge, EachCopyInAtMostOneCopiedStabilizer) {
    auto code = qwr::fixtures::fig1(8);
    auto r = qwr::x_reduce(code);
    std::vector<int> uses(code.n() * r.plan.copies, 0);
    std::size_t copied = 0;
    for (const auto &order : r.plan.qubit_order) copied += order.size();
    for (std::size_t s = 0; s < copied; ++s) {
        for (auto q : r.code.hx().row(s)) {
            if (q < uses.size()) ++uses[q];
        }
    }
    for (auto u : uses) EXPECT_LE(u, 1);
}
