#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qwr/error.hpp"
#include "qwr/f2.hpp"
#include "qwr/fixtures.hpp"

using qwr::BitVector;
using qwr::SparseBitMatrix;

namespace {

SparseBitMatrix interval_boundary(std::size_t ell) {
    std::vector<std::vector<std::size_t>> rows(ell);
    for (std::size_t e = 0; e + 1 < ell; ++e) {
        rows[e].push_back(e);
        rows[e + 1].push_back(e);
    }
    return SparseBitMatrix(ell, ell - 1, rows);
}

SparseBitMatrix random_matrix(std::mt19937_64 &gen, std::size_t rows, std::size_t cols, double p = 0.4) {
    std::bernoulli_distribution bit(p);
    std::vector<std::vector<std::size_t>> r(rows);
    for (auto &row : r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (bit(gen)) row.push_back(c);
        }
    }
    return SparseBitMatrix(rows, cols, r);
}

}  // namespace

TEST(F2Rank, Examples) {
    EXPECT_EQ(qwr::rank(SparseBitMatrix::identity(2)), 2U);
    EXPECT_EQ(qwr::rank(SparseBitMatrix(3, 5)), 0U);
    EXPECT_EQ(qwr::rank(interval_boundary(3)), 2U);
}

TEST(F2Rank, MatchesDenseOracleAndTranspose) {
    std::mt19937_64 gen(11);
    for (std::size_t rows = 1; rows <= 6; ++rows) {
        for (std::size_t cols = 1; cols <= 6; ++cols) {
            for (int rep = 0; rep < 10; ++rep) {
                auto m = random_matrix(gen, rows, cols);
                EXPECT_EQ(qwr::rank(m), oracle::dense_rank(m));
                EXPECT_EQ(qwr::rank(m), qwr::rank(m.transpose()));
            }
        }
    }
}

TEST(F2Rank, WideMatricesAcrossWordBoundaries) {
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 20; ++rep) {
        auto m = random_matrix(gen, 40, 150, 0.05);
        EXPECT_EQ(qwr::rank(m), oracle::dense_rank(m));
    }
}

TEST(F2Rank, SparseEliminationMatchesOracle) {
    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t rows = 1 + rep % 23;
        const std::size_t cols = 1 + (rep * 7) % 31;
        const double p = rep % 3 == 0 ? 0.08 : (rep % 3 == 1 ? 0.2 : 0.5);
        auto m = random_matrix(gen, rows, cols, p);
        EXPECT_EQ(qwr::sparse_rank(m), oracle::dense_rank(m)) << rep;
    }
}

TEST(F2Rank, LargeSparseMatricesAgreeWithDense) {
    // Cycle-like rows keep the elimination sparse for a long time.
    std::mt19937_64 gen(3);
    std::vector<std::vector<std::size_t>> supports;
    const std::size_t n = 3000;
    for (std::size_t r = 0; r < 2500; ++r) {
        std::vector<std::size_t> s{r, (r + 1) % n, gen() % n};
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        supports.push_back(s);
    }
    SparseBitMatrix m(2500, n, supports);
    qwr::DenseBitMatrix d(m);
    EXPECT_EQ(qwr::sparse_rank(m), d.rref().size());
    EXPECT_EQ(qwr::rank(m), d.rref().size());
}

TEST(F2Kernel, Examples) {
    EXPECT_TRUE(qwr::kernel_basis(SparseBitMatrix::identity(3)).empty());
    EXPECT_EQ(qwr::kernel_basis(SparseBitMatrix(2, 4)).size(), 4U);
    auto k = qwr::kernel_basis(interval_boundary(3).transpose());
    ASSERT_EQ(k.size(), 1U);
    EXPECT_EQ(k[0], BitVector::ones(3));
}

TEST(F2Kernel, BasisIsIndependentAndSpans) {
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 60; ++rep) {
        auto m = random_matrix(gen, 1 + rep % 7, 1 + (rep * 3) % 9);
        auto basis = qwr::kernel_basis(m);
        EXPECT_EQ(basis.size() + qwr::rank(m), m.cols());
        for (const auto &v : basis) EXPECT_TRUE(m.multiply(v).is_zero());
        EXPECT_EQ(oracle::dense_rank(SparseBitMatrix::from_rows(m.cols(), basis)), basis.size());
    }
}

TEST(F2MatMul, ExamplesAndAssociativity) {
    std::mt19937_64 gen(9);
    auto m = random_matrix(gen, 4, 5);
    EXPECT_EQ(qwr::mat_mul(SparseBitMatrix::identity(4), m), m);
    auto toric = qwr::fixtures::toric(3);
    EXPECT_TRUE(qwr::mat_mul(toric.hx(), toric.hz().transpose()).is_zero());
    SparseBitMatrix pick(1, 2, {{0, 1}});
    SparseBitMatrix pair(2, 3, {{0, 1}, {1, 2}});
    EXPECT_EQ(qwr::mat_mul(pick, pair), SparseBitMatrix(1, 3, {{0, 2}}));
    for (int rep = 0; rep < 30; ++rep) {
        auto a = random_matrix(gen, 3, 4);
        auto b = random_matrix(gen, 4, 5);
        auto c = random_matrix(gen, 5, 2);
        EXPECT_EQ(qwr::mat_mul(qwr::mat_mul(a, b), c), qwr::mat_mul(a, qwr::mat_mul(b, c)));
    }
    EXPECT_THROW(qwr::mat_mul(SparseBitMatrix(2, 2), SparseBitMatrix(3, 3)), qwr::DomainError);
}

TEST(F2Solve, Examples) {
    auto e0 = BitVector::unit(3, 0);
    EXPECT_EQ(qwr::solve(SparseBitMatrix::identity(3), e0), e0);
    EXPECT_FALSE(qwr::solve(SparseBitMatrix(2, 2), BitVector::unit(2, 1)).has_value());
    auto d = interval_boundary(3);
    // The image of the interval boundary is the even-weight vectors, so
    // (1,0,1) is reached by v = (1,1) and odd targets are unreachable.
    auto both = qwr::solve(d, BitVector(3, {0, 2}));
    ASSERT_TRUE(both.has_value());
    EXPECT_EQ(*both, BitVector(2, {0, 1}));
    EXPECT_FALSE(qwr::solve(d, BitVector(3, {0})).has_value());
    auto v = qwr::solve(d, BitVector(3, {0, 1}));
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, BitVector(2, {0}));
}

TEST(F2Solve, SolutionsAreExactAndAbsenceIsCorrect) {
    std::mt19937_64 gen(21);
    for (int rep = 0; rep < 200; ++rep) {
        auto m = random_matrix(gen, 5, 4, 0.3);
        std::vector<std::size_t> support;
        for (std::size_t r = 0; r < 5; ++r) {
            if (gen() & 1U) support.push_back(r);
        }
        BitVector target(5, support);
        auto v = qwr::solve(m, target);
        // Oracle: target is reachable iff appending it as a column keeps the rank.
        auto cols = oracle::dense(m.transpose());
        std::vector<int> t(5, 0);
        for (auto r : support) t[r] = 1;
        const bool reachable = oracle::in_span(cols, t);
        EXPECT_EQ(v.has_value(), reachable);
        if (v) EXPECT_EQ(m.multiply(*v), target);
    }
}

TEST(F2RowSpace, MembershipAndIndependence) {
    SparseBitMatrix m(2, 4, {{0, 1}, {1, 2}});
    EXPECT_TRUE(qwr::in_row_space(m, BitVector(4, {0, 2})));
    EXPECT_FALSE(qwr::in_row_space(m, BitVector(4, {3})));
    qwr::RowSpace space(4);
    EXPECT_TRUE(space.insert(BitVector(4, {0, 1})));
    EXPECT_TRUE(space.insert(BitVector(4, {1, 2})));
    EXPECT_FALSE(space.insert(BitVector(4, {0, 2})));
    EXPECT_EQ(space.dimension(), 2U);
    EXPECT_TRUE(space.contains(BitVector(4)));
    EXPECT_TRUE(qwr::row_space_contains(m, SparseBitMatrix(1, 4, {{0, 2}})));
}

TEST(F2Text, RoundTrip) {
    std::mt19937_64 gen(4);
    for (int rep = 0; rep < 20; ++rep) {
        auto m = random_matrix(gen, 1 + rep % 5, 1 + rep % 7, 0.3);
        auto text = m.to_text();
        EXPECT_EQ(SparseBitMatrix::from_text(text), m);
        EXPECT_EQ(SparseBitMatrix::from_text(text).to_text(), text);
    }
    EXPECT_EQ(SparseBitMatrix(2, 3, {{}, {0, 2}}).to_text(), "2 3\n\n0 2\n");
}

TEST(F2Validation, RejectsBadSupports) {
    EXPECT_THROW(BitVector(3, {1, 1}), qwr::DomainError);
    EXPECT_THROW(BitVector(3, {3}), qwr::DomainError);
    EXPECT_THROW(SparseBitMatrix(1, 2, {{2}}), qwr::DomainError);
    EXPECT_THROW(SparseBitMatrix(2, 2, {{0}}), qwr::DomainError);
}
