#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qwr/cone.hpp"
#include "qwr/distance.hpp"
#include "qwr/error.hpp"
#include "qwr/fixtures.hpp"
#include "qwr/rng.hpp"
#include "qwr/robustify.hpp"

using qwr::CssCode;
using qwr::Graph;
using qwr::PauliKind;
using qwr::Rational;
using qwr::SparseBitMatrix;

namespace {

// Z-stabilizer group of `after` restricted to the first n qubits equals the
// Z-stabilizer group of `before`.
void expect_same_group_off_connecting(const CssCode &before, const CssCode &after) {
    const std::size_t n = before.n();
    const auto rows_after = oracle::dense(after.hz());
    oracle::Dense connecting_part;
    for (const auto &row : rows_after) connecting_part.emplace_back(row.begin() + static_cast<long>(n), row.end());
    const auto restricted_dim = oracle::dense_rank(rows_after) - oracle::dense_rank(connecting_part);
    EXPECT_EQ(restricted_dim, oracle::dense_rank(before.hz()));
    for (const auto &row : oracle::dense(before.hz())) {
        auto extended = row;
        extended.resize(after.n(), 0);
        EXPECT_TRUE(oracle::in_span(rows_after, extended));
    }
}

Graph random_sparse_graph(std::size_t n, std::uint64_t seed) {
    qwr::Rng rng(seed);
    Graph g(n);
    for (std::size_t v = 1; v < n; ++v) g.add_edge(static_cast<std::size_t>(rng.below(v)), v);
    return g;
}

}  // namespace

TEST(Connect, ReasonableCodeUnchanged) {
    for (const auto &code : {qwr::fixtures::toric(3), qwr::fixtures::steane(), qwr::fixtures::fig1(6)}) {
        auto c = qwr::connect(code);
        EXPECT_EQ(c.code, code);
        EXPECT_TRUE(c.plan.entries.empty());
        EXPECT_TRUE(c.report.satisfied());
    }
}

TEST(Connect, TwoIsolatedQubits) {
    CssCode code(2, SparseBitMatrix(0, 2), SparseBitMatrix(1, 2, {{0, 1}}));
    ASSERT_FALSE(qwr::is_reasonable(code).reasonable);
    auto c = qwr::connect(code);
    EXPECT_EQ(c.code.n(), 3U);
    ASSERT_EQ(c.plan.entries.size(), 1U);
    EXPECT_EQ(c.plan.entries[0].connecting_qubits, (std::vector<std::size_t>{2}));
    EXPECT_EQ(c.plan.entries[0].representatives[0], (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_EQ(oracle::k_of(c.code), oracle::k_of(code));
    expect_same_group_off_connecting(code, c.code);
}

TEST(Connect, PuncturedSphereKeepsOneLogical) {
    auto code = qwr::fixtures::punctured_sphere(2, true);
    ASSERT_EQ(oracle::k_of(code), 1U);
    ASSERT_FALSE(qwr::is_reasonable(code).reasonable);
    auto c = qwr::connect(code);
    EXPECT_TRUE(c.code.commutes());
    EXPECT_EQ(oracle::k_of(c.code), 1U);
    EXPECT_TRUE(qwr::is_reasonable(c.code).reasonable);
    EXPECT_TRUE(qwr::is_connected(c.code));
    EXPECT_TRUE(c.report.satisfied());
    expect_same_group_off_connecting(code, c.code);

    const auto before = qwr::validate(code);
    const auto dx = oracle::brute_distance(code, PauliKind::X);
    const auto dz = oracle::brute_distance(code, PauliKind::Z);
    const auto dx2 = qwr::distance_exact(c.code, PauliKind::X, 1U << 24);
    const auto dz2 = qwr::distance_exact(c.code, PauliKind::Z, 1U << 24);
    ASSERT_EQ(dx2.method, qwr::DistanceMethod::Exact);
    EXPECT_GE(*dz2.value * 3, dz);
    EXPECT_GE(*dx2.value * before.w_x, dx);
}

TEST(Connect, QubitsWithoutXStabilizersCloseTheChain) {
    // Components {0,3}, {1}, {2}; qubits 1 and 2 are under no X-stabilizer.
    CssCode code(4, SparseBitMatrix(1, 4, {{0, 3}}), SparseBitMatrix(1, 4, {{0, 1, 2, 3}}));
    ASSERT_FALSE(qwr::is_reasonable(code).reasonable);
    auto c = qwr::connect(code);
    ASSERT_EQ(c.plan.entries.size(), 1U);
    const auto &e = c.plan.entries[0];
    EXPECT_EQ(e.representatives[0], (std::pair<std::size_t, std::size_t>{1, 2}));
    EXPECT_EQ(e.representatives[1], (std::pair<std::size_t, std::size_t>{4, 0}));
    EXPECT_EQ(c.code.hz().row_vector(0).support(), (std::vector<std::size_t>{3, 5}));
    const auto x_of = c.code.hx().column_supports();
    EXPECT_EQ(qwr::support_components(x_of, c.code.hz().row(0)).size(), 1U);
    EXPECT_TRUE(c.code.commutes());
    EXPECT_EQ(oracle::k_of(c.code), oracle::k_of(code));
    EXPECT_TRUE(c.report.satisfied());
    expect_same_group_off_connecting(code, c.code);
}

TEST(Connect, ThreeComponents) {
    // Z on three disjoint pairs, each pair checked by its own X-stabilizer.
    CssCode code(6, SparseBitMatrix(3, 6, {{0, 1}, {2, 3}, {4, 5}}), SparseBitMatrix(1, 6, {{0, 1, 2, 3, 4, 5}}));
    ASSERT_FALSE(qwr::is_reasonable(code).reasonable);
    auto c = qwr::connect(code);
    ASSERT_EQ(c.plan.entries.size(), 1U);
    EXPECT_EQ(c.plan.entries[0].connecting_qubits.size(), 2U);
    EXPECT_EQ(c.code.n(), 8U);
    EXPECT_TRUE(c.code.commutes());
    EXPECT_EQ(oracle::k_of(c.code), oracle::k_of(code));
    EXPECT_TRUE(c.report.satisfied());
    expect_same_group_off_connecting(code, c.code);
}

TEST(Augment, PathReachesHalf) {
    Graph p8(8);
    for (std::size_t v = 0; v + 1 < 8; ++v) p8.add_edge(v, v + 1);
    auto a = qwr::augment_graph(p8, Rational::of(1, 2), 11);
    EXPECT_GE(oracle::brute_cheeger(a.graph), 0.5);
    EXPECT_LE(a.max_degree_increase, 3U);
    EXPECT_EQ(a.graph.components(), p8.components());
    EXPECT_TRUE(a.exact);
}

TEST(Augment, AlreadyExpandingAndSingletons) {
    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    EXPECT_TRUE(qwr::augment_graph(k4, Rational::of(1, 2), 1).added.empty());
    Graph isolated(3);
    auto a = qwr::augment_graph(isolated, Rational::of(1, 1), 1);
    EXPECT_TRUE(a.added.empty());
    EXPECT_TRUE(a.achieved.is_infinite());
}

TEST(Augment, DeterministicAndComponentLocal) {
    Graph g(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {5, 6}, {6, 7}, {7, 8}, {8, 9}});
    auto a = qwr::augment_graph(g, Rational::of(1, 1), 99);
    auto b = qwr::augment_graph(g, Rational::of(1, 1), 99);
    EXPECT_EQ(a.added, b.added);
    EXPECT_EQ(a.graph.components(), g.components());
    EXPECT_GE(oracle::brute_cheeger(a.graph), 1.0);
}

TEST(Augment, RoundCapRaises) {
    Graph p6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    qwr::AugmentOptions options;
    options.max_rounds = 1;
    try {
        qwr::augment_graph(p6, Rational::of(10, 1), 3, options);
        FAIL() << "expected AugmentationFailed";
    } catch (const qwr::DomainError &e) {
        EXPECT_EQ(e.kind(), qwr::errors::kAugmentationFailed);
        EXPECT_TRUE(e.detail().contains("best_h"));
    }
}

TEST(Augment, RandomSparseGraphs) {
    std::size_t ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto g = random_sparse_graph(8 + s % 9, s);
        try {
            auto a = qwr::augment_graph(g, Rational::of(1, 2), s);
            if (oracle::brute_cheeger(a.graph) >= 0.5 && a.max_degree_increase <= 4) ++ok;
        } catch (const qwr::DomainError &) {
        }
    }
    EXPECT_GE(ok, 18U);
}

TEST(ImproveSoundness, ConedPolygonGainsSoundness) {
    auto f = qwr::fixtures::fig1(8);
    auto row = f.hz().row(0);
    std::vector<std::vector<std::size_t>> q_sets{{row.begin(), row.end()}};
    auto before = qwr::build_b_complex(f, q_sets[0]);
    EXPECT_EQ(qwr::soundness(before.d1(), before.d0()), Rational::of(1, 2));

    auto improved = qwr::improve_soundness(f, q_sets, Rational::of(1, 1), 5);
    ASSERT_EQ(improved.complexes.size(), 1U);
    const auto &b = improved.complexes[0];
    EXPECT_EQ(b.zeroth_homology(), 0U);
    EXPECT_GE(qwr::soundness(b.d1(), b.d0()), Rational::of(1, 1));
    EXPECT_TRUE(improved.report.satisfied());

    qwr::ConeInput in{f, {}, q_sets};
    for (std::size_t z = 1; z < f.hz().rows(); ++z) in.direct_z.push_back(z);
    auto cone = qwr::cone_code(in, improved.complexes);
    EXPECT_TRUE(cone.code.commutes());
    EXPECT_EQ(oracle::k_of(cone.code), 2U);
    auto reduced = qwr::reduce_cone(cone, std::nullopt, 1);
    EXPECT_EQ(oracle::k_of(reduced.code), 2U);
}

TEST(ImproveSoundness, RejectsUnreasonableCodes) {
    auto code = qwr::fixtures::punctured_sphere(2, true);
    std::vector<std::vector<std::size_t>> q_sets;
    EXPECT_THROW(qwr::improve_soundness(code, q_sets, Rational::of(1, 2), 1), qwr::DomainError);
}
