#pragma once

// Exact linear algebra over GF(2).
//
// The interchange types are sparse (sorted index sets). Elimination runs on
// a bit-packed dense copy; pivots are always taken at the lowest available
// column so every basis returned here is reproducible.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qwr {

/// A vector over GF(2) stored as the sorted set of its nonzero coordinates.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t length) : length_(length) {}
    /// Sorts and validates `support`; duplicate indices are rejected.
    BitVector(std::size_t length, std::vector<std::size_t> support);

    static BitVector unit(std::size_t length, std::size_t index);
    static BitVector ones(std::size_t length);

    std::size_t length() const noexcept { return length_; }
    const std::vector<std::size_t> &support() const noexcept { return support_; }
    std::size_t weight() const noexcept { return support_.size(); }
    bool is_zero() const noexcept { return support_.empty(); }
    bool get(std::size_t index) const;

    BitVector operator^(const BitVector &other) const;
    std::size_t dot(const BitVector &other) const;  // parity of the overlap
    std::size_t overlap(const BitVector &other) const;

    friend bool operator==(const BitVector &, const BitVector &) = default;

   private:
    std::size_t length_ = 0;
    std::vector<std::size_t> support_;
};

/// A GF(2) matrix as rows of sorted column-index sets.
class SparseBitMatrix {
   public:
    SparseBitMatrix() = default;
    SparseBitMatrix(std::size_t rows, std::size_t cols);
    /// Sorts every row; throws DimensionMismatch/IndexOutOfRange on bad input.
    SparseBitMatrix(std::size_t rows, std::size_t cols, std::vector<std::vector<std::size_t>> row_supports);

    static SparseBitMatrix identity(std::size_t n);
    static SparseBitMatrix from_rows(std::size_t cols, const std::vector<BitVector> &rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const std::size_t> row(std::size_t r) const { return row_supports_.at(r); }
    const std::vector<std::vector<std::size_t>> &row_supports() const noexcept { return row_supports_; }
    BitVector row_vector(std::size_t r) const;
    bool get(std::size_t r, std::size_t c) const;

    std::size_t nonzeros() const;
    std::size_t max_row_weight() const;
    std::size_t max_col_weight() const;
    std::vector<std::size_t> col_weights() const;
    bool is_zero() const;

    SparseBitMatrix transpose() const;
    /// Column-wise adjacency: for each column, the sorted rows containing it.
    std::vector<std::vector<std::size_t>> column_supports() const;
    BitVector multiply(const BitVector &v) const;  // this * v
    /// Returns a copy with `other`'s rows appended.
    SparseBitMatrix stacked(const SparseBitMatrix &other) const;
    void append_row(std::vector<std::size_t> support);

    std::string to_text() const;
    static SparseBitMatrix from_text(const std::string &text);

    friend bool operator==(const SparseBitMatrix &, const SparseBitMatrix &) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<std::size_t>> row_supports_;
};

/// Bit-packed dense matrix used as the elimination workspace.
class DenseBitMatrix {
   public:
    DenseBitMatrix() = default;
    DenseBitMatrix(std::size_t rows, std::size_t cols);
    explicit DenseBitMatrix(const SparseBitMatrix &m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t words_per_row() const noexcept { return words_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_ + c / 64] >> (c % 64)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool value);
    void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }
    void xor_row_into(std::size_t src, std::size_t dst);
    void swap_rows(std::size_t a, std::size_t b);
    std::uint64_t *row_data(std::size_t r) { return data_.data() + r * words_; }
    const std::uint64_t *row_data(std::size_t r) const { return data_.data() + r * words_; }
    std::vector<std::size_t> row_support(std::size_t r) const;

    /// In-place reduced row echelon form; returns pivot columns in row order.
    std::vector<std::size_t> rref();

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;
};

std::size_t rank(const SparseBitMatrix &m);
/// Markowitz-style sparse elimination finished densely once fill-in makes
/// the active block dense. rank() switches to it for large matrices.
std::size_t sparse_rank(const SparseBitMatrix &m);
/// Basis of {v : m v = 0}, one vector per free column in ascending order.
std::vector<BitVector> kernel_basis(const SparseBitMatrix &m);
SparseBitMatrix mat_mul(const SparseBitMatrix &a, const SparseBitMatrix &b);
/// Some v with m v = target, or nullopt when the system is inconsistent.
std::optional<BitVector> solve(const SparseBitMatrix &m, const BitVector &target);
bool in_row_space(const SparseBitMatrix &m, const BitVector &v);
/// True iff every row of `a` lies in the row space of `b`.
bool row_space_contains(const SparseBitMatrix &b, const SparseBitMatrix &a);

/// Incrementally built row space supporting independence and membership
/// queries without re-eliminating from scratch.
class RowSpace {
   public:
    explicit RowSpace(std::size_t length);
    explicit RowSpace(const SparseBitMatrix &m);

    std::size_t length() const noexcept { return length_; }
    std::size_t dimension() const noexcept { return pivots_.size(); }
    /// Adds v; returns false (and leaves the space unchanged) if dependent.
    bool insert(const BitVector &v);
    bool contains(const BitVector &v) const;

   private:
    void reduce(std::vector<std::uint64_t> &words) const;

    std::size_t length_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace qwr
