#include "qwr/f2.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <iterator>
#include <queue>
#include <sstream>

#include "qwr/error.hpp"

namespace qwr {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

std::vector<std::uint64_t> pack(std::size_t length, std::span<const std::size_t> support) {
    std::vector<std::uint64_t> words(word_count(length), 0);
    for (auto i : support) {
        words[i / 64] ^= std::uint64_t{1} << (i % 64);
    }
    return words;
}

std::vector<std::size_t> unpack(const std::uint64_t *words, std::size_t n_words) {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < n_words; ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t length, std::vector<std::size_t> support)
    : length_(length), support_(std::move(support)) {
    std::sort(support_.begin(), support_.end());
    if (std::adjacent_find(support_.begin(), support_.end()) != support_.end()) {
        throw DomainError(errors::kInvalidArgument, "BitVector support has duplicate indices");
    }
    if (!support_.empty() && support_.back() >= length_) {
        throw DomainError(errors::kIndexOutOfRange, "BitVector index out of range",
                          {{"index", support_.back()}, {"length", length_}});
    }
}

BitVector BitVector::unit(std::size_t length, std::size_t index) { return BitVector(length, {index}); }

BitVector BitVector::ones(std::size_t length) {
    std::vector<std::size_t> s(length);
    for (std::size_t i = 0; i < length; ++i) s[i] = i;
    return BitVector(length, std::move(s));
}

bool BitVector::get(std::size_t index) const {
    return std::binary_search(support_.begin(), support_.end(), index);
}

BitVector BitVector::operator^(const BitVector &other) const {
    if (other.length_ != length_) {
        throw DomainError(errors::kDimensionMismatch, "BitVector lengths differ");
    }
    BitVector out(length_);
    std::set_symmetric_difference(support_.begin(), support_.end(), other.support_.begin(), other.support_.end(),
                                  std::back_inserter(out.support_));
    return out;
}

std::size_t BitVector::overlap(const BitVector &other) const {
    std::size_t count = 0;
    auto a = support_.begin();
    auto b = other.support_.begin();
    while (a != support_.end() && b != other.support_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            ++count;
            ++a;
            ++b;
        }
    }
    return count;
}

std::size_t BitVector::dot(const BitVector &other) const { return overlap(other) & 1U; }

// ---------------------------------------------------------- SparseBitMatrix

SparseBitMatrix::SparseBitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_supports_(rows) {}

SparseBitMatrix::SparseBitMatrix(std::size_t rows, std::size_t cols,
                                 std::vector<std::vector<std::size_t>> row_supports)
    : rows_(rows), cols_(cols), row_supports_(std::move(row_supports)) {
    if (row_supports_.size() != rows_) {
        throw DomainError(errors::kDimensionMismatch, "row count does not match supplied rows",
                          {{"rows", rows_}, {"supplied", row_supports_.size()}});
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        auto &row = row_supports_[r];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
            throw DomainError(errors::kInvalidArgument, "matrix row has duplicate column indices", {{"row", r}});
        }
        if (!row.empty() && row.back() >= cols_) {
            throw DomainError(errors::kIndexOutOfRange, "column index out of range",
                              {{"row", r}, {"index", row.back()}, {"cols", cols_}});
        }
    }
}

SparseBitMatrix SparseBitMatrix::identity(std::size_t n) {
    std::vector<std::vector<std::size_t>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = {i};
    return SparseBitMatrix(n, n, std::move(rows));
}

SparseBitMatrix SparseBitMatrix::from_rows(std::size_t cols, const std::vector<BitVector> &rows) {
    std::vector<std::vector<std::size_t>> supports;
    supports.reserve(rows.size());
    for (const auto &r : rows) {
        if (r.length() != cols) throw DomainError(errors::kDimensionMismatch, "row length mismatch");
        supports.push_back(r.support());
    }
    return SparseBitMatrix(rows.size(), cols, std::move(supports));
}

BitVector SparseBitMatrix::row_vector(std::size_t r) const { return BitVector(cols_, row_supports_.at(r)); }

bool SparseBitMatrix::get(std::size_t r, std::size_t c) const {
    const auto &row = row_supports_.at(r);
    return std::binary_search(row.begin(), row.end(), c);
}

std::size_t SparseBitMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto &r : row_supports_) n += r.size();
    return n;
}

std::size_t SparseBitMatrix::max_row_weight() const {
    std::size_t w = 0;
    for (const auto &r : row_supports_) w = std::max(w, r.size());
    return w;
}

std::vector<std::size_t> SparseBitMatrix::col_weights() const {
    std::vector<std::size_t> w(cols_, 0);
    for (const auto &r : row_supports_) {
        for (auto c : r) ++w[c];
    }
    return w;
}

std::size_t SparseBitMatrix::max_col_weight() const {
    auto w = col_weights();
    return w.empty() ? 0 : *std::max_element(w.begin(), w.end());
}

bool SparseBitMatrix::is_zero() const {
    return std::all_of(row_supports_.begin(), row_supports_.end(), [](const auto &r) { return r.empty(); });
}

std::vector<std::vector<std::size_t>> SparseBitMatrix::column_supports() const {
    std::vector<std::vector<std::size_t>> cols(cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (auto c : row_supports_[r]) cols[c].push_back(r);
    }
    return cols;
}

SparseBitMatrix SparseBitMatrix::transpose() const { return SparseBitMatrix(cols_, rows_, column_supports()); }

BitVector SparseBitMatrix::multiply(const BitVector &v) const {
    if (v.length() != cols_) {
        throw DomainError(errors::kDimensionMismatch, "matrix-vector dimension mismatch",
                          {{"cols", cols_}, {"length", v.length()}});
    }
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < rows_; ++r) {
        std::size_t parity = 0;
        const auto &row = row_supports_[r];
        auto a = row.begin();
        auto b = v.support().begin();
        while (a != row.end() && b != v.support().end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                parity ^= 1U;
                ++a;
                ++b;
            }
        }
        if (parity) out.push_back(r);
    }
    return BitVector(rows_, std::move(out));
}

SparseBitMatrix SparseBitMatrix::stacked(const SparseBitMatrix &other) const {
    if (other.cols_ != cols_) throw DomainError(errors::kDimensionMismatch, "stacked: column counts differ");
    auto rows = row_supports_;
    rows.insert(rows.end(), other.row_supports_.begin(), other.row_supports_.end());
    return SparseBitMatrix(rows_ + other.rows_, cols_, std::move(rows));
}

void SparseBitMatrix::append_row(std::vector<std::size_t> support) {
    std::sort(support.begin(), support.end());
    if (!support.empty() && support.back() >= cols_) {
        throw DomainError(errors::kIndexOutOfRange, "column index out of range");
    }
    row_supports_.push_back(std::move(support));
    ++rows_;
}

std::string SparseBitMatrix::to_text() const {
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << '\n';
    for (const auto &row : row_supports_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

SparseBitMatrix SparseBitMatrix::from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DomainError(errors::kParseError, "matrix text: missing header");
    std::istringstream header(line);
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (!(header >> rows >> cols)) throw DomainError(errors::kParseError, "matrix text: malformed header");
    std::vector<std::vector<std::size_t>> supports(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) {
            throw DomainError(errors::kParseError, "matrix text: fewer rows than declared", {{"row", r}});
        }
        std::istringstream fields(line);
        std::size_t c = 0;
        while (fields >> c) supports[r].push_back(c);
        if (!fields.eof()) throw DomainError(errors::kParseError, "matrix text: non-integer entry", {{"row", r}});
    }
    return SparseBitMatrix(rows, cols, std::move(supports));
}

// ----------------------------------------------------------- DenseBitMatrix

DenseBitMatrix::DenseBitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_(word_count(cols)), data_(rows * word_count(cols), 0) {}

DenseBitMatrix::DenseBitMatrix(const SparseBitMatrix &m) : DenseBitMatrix(m.rows(), m.cols()) {
    for (std::size_t r = 0; r < rows_; ++r) {
        for (auto c : m.row(r)) data_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
    }
}

void DenseBitMatrix::set(std::size_t r, std::size_t c, bool value) {
    auto &w = data_[r * words_ + c / 64];
    auto bit = std::uint64_t{1} << (c % 64);
    w = value ? (w | bit) : (w & ~bit);
}

void DenseBitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    const std::uint64_t *s = row_data(src);
    std::uint64_t *d = row_data(dst);
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void DenseBitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_data(a), row_data(a) + words_, row_data(b));
}

std::vector<std::size_t> DenseBitMatrix::row_support(std::size_t r) const { return unpack(row_data(r), words_); }

std::vector<std::size_t> DenseBitMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols_ && next < rows_; ++c) {
        const std::size_t word = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t found = rows_;
        for (std::size_t r = next; r < rows_; ++r) {
            if (data_[r * words_ + word] & bit) {
                found = r;
                break;
            }
        }
        if (found == rows_) continue;
        swap_rows(found, next);
        // Columns left of c are already cleared in every row, so the XOR can
        // skip the leading words.
        const std::uint64_t *p = row_data(next);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == next) continue;
            std::uint64_t *d = row_data(r);
            if (d[word] & bit) {
                for (std::size_t w = word; w < words_; ++w) d[w] ^= p[w];
            }
        }
        pivots.push_back(c);
        ++next;
    }
    return pivots;
}

// ------------------------------------------------------------------- algebra

namespace {

/// Forward elimination only; the rank needs no back substitution.
std::size_t echelon_rank(DenseBitMatrix &d) {
    std::size_t next = 0;
    const std::size_t words = d.words_per_row();
    for (std::size_t c = 0; c < d.cols() && next < d.rows(); ++c) {
        const std::size_t word = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t found = d.rows();
        for (std::size_t r = next; r < d.rows(); ++r) {
            if (d.row_data(r)[word] & bit) {
                found = r;
                break;
            }
        }
        if (found == d.rows()) continue;
        d.swap_rows(found, next);
        const std::uint64_t *p = d.row_data(next);
        for (std::size_t r = next + 1; r < d.rows(); ++r) {
            std::uint64_t *q = d.row_data(r);
            if (q[word] & bit) {
                for (std::size_t w = word; w < words; ++w) q[w] ^= p[w];
            }
        }
        ++next;
    }
    return next;
}

std::size_t dense_rank(const SparseBitMatrix &m) {
    if (m.rows() > m.cols()) {
        DenseBitMatrix d(m.transpose());
        return echelon_rank(d);
    }
    DenseBitMatrix d(m);
    return echelon_rank(d);
}

constexpr std::size_t kSparseRankThreshold = std::size_t{1} << 22;

}  // namespace

std::size_t sparse_rank(const SparseBitMatrix &m) {
    using Index = std::uint32_t;
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    std::vector<std::vector<Index>> rows(nrows);
    std::vector<std::vector<Index>> col_rows(ncols);
    std::vector<std::size_t> count(ncols, 0);
    std::size_t nnz = 0;
    for (std::size_t r = 0; r < nrows; ++r) {
        for (auto c : m.row(r)) {
            rows[r].push_back(static_cast<Index>(c));
            col_rows[c].push_back(static_cast<Index>(r));
            ++count[c];
        }
        nnz += rows[r].size();
    }
    std::vector<char> row_alive(nrows, 1);
    std::vector<char> col_alive(ncols, 1);
    std::size_t alive_rows = nrows;
    std::size_t alive_cols = ncols;

    using Entry = std::pair<std::size_t, Index>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t c = 0; c < ncols; ++c) heap.emplace(count[c], static_cast<Index>(c));

    std::size_t result = 0;
    std::vector<Index> merged;
    std::vector<Index> holders;
    while (!heap.empty()) {
        auto [cnt, c] = heap.top();
        heap.pop();
        if (!col_alive[c] || cnt != count[c]) continue;
        if (cnt == 0) {
            col_alive[c] = 0;
            --alive_cols;
            continue;
        }
        // Once the active block has filled in, packed words are cheaper.
        if (nnz * 32 > alive_rows * alive_cols) break;

        holders.clear();
        for (auto r : col_rows[c]) {
            if (row_alive[r] && std::binary_search(rows[r].begin(), rows[r].end(), c)) holders.push_back(r);
        }
        std::sort(holders.begin(), holders.end());
        holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
        Index pivot = holders.front();
        for (auto r : holders) {
            if (rows[r].size() < rows[pivot].size()) pivot = r;
        }
        const auto &p = rows[pivot];
        for (auto r : holders) {
            if (r == pivot) continue;
            auto &q = rows[r];
            merged.clear();
            std::set_symmetric_difference(q.begin(), q.end(), p.begin(), p.end(), std::back_inserter(merged));
            // Columns of p flip membership in q.
            std::size_t i = 0;
            for (auto col : p) {
                while (i < q.size() && q[i] < col) ++i;
                if (i < q.size() && q[i] == col) {
                    --count[col];
                } else {
                    ++count[col];
                    col_rows[col].push_back(r);
                }
                heap.emplace(count[col], col);
            }
            nnz = nnz - q.size() + merged.size();
            q.swap(merged);
        }
        for (auto col : p) {
            --count[col];
            heap.emplace(count[col], col);
        }
        nnz -= p.size();
        row_alive[pivot] = 0;
        --alive_rows;
        rows[pivot].clear();
        rows[pivot].shrink_to_fit();
        col_alive[c] = 0;
        --alive_cols;
        col_rows[c].clear();
        col_rows[c].shrink_to_fit();
        ++result;
    }

    std::vector<std::size_t> new_index(ncols, 0);
    std::size_t width = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
        if (col_alive[c]) new_index[c] = width++;
    }
    std::vector<std::vector<std::size_t>> rest;
    for (std::size_t r = 0; r < nrows; ++r) {
        if (!row_alive[r] || rows[r].empty()) continue;
        std::vector<std::size_t> support;
        support.reserve(rows[r].size());
        for (auto c : rows[r]) support.push_back(new_index[c]);
        rest.push_back(std::move(support));
    }
    if (rest.empty()) return result;
    const std::size_t height = rest.size();
    return result + dense_rank(SparseBitMatrix(height, width, std::move(rest)));
}

std::size_t rank(const SparseBitMatrix &m) {
    if (m.rows() * m.cols() > kSparseRankThreshold && m.rows() < (std::size_t{1} << 32) &&
        m.cols() < (std::size_t{1} << 32)) {
        return sparse_rank(m);
    }
    return dense_rank(m);
}

std::vector<BitVector> kernel_basis(const SparseBitMatrix &m) {
    DenseBitMatrix d(m);
    auto pivots = d.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::size_t> support{f};
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (d.get(r, f)) support.push_back(pivots[r]);
        }
        basis.emplace_back(m.cols(), std::move(support));
    }
    return basis;
}

SparseBitMatrix mat_mul(const SparseBitMatrix &a, const SparseBitMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DomainError(errors::kDimensionMismatch, "mat_mul: inner dimensions differ",
                          {{"a_cols", a.cols()}, {"b_rows", b.rows()}});
    }
    std::vector<std::vector<std::size_t>> out(a.rows());
    std::vector<std::uint8_t> parity(b.cols(), 0);
    std::vector<std::uint8_t> seen(b.cols(), 0);
    std::vector<std::size_t> touched;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        touched.clear();
        for (auto k : a.row(r)) {
            for (auto c : b.row(k)) {
                if (!seen[c]) {
                    seen[c] = 1;
                    touched.push_back(c);
                }
                parity[c] ^= 1U;
            }
        }
        for (auto c : touched) {
            if (parity[c]) out[r].push_back(c);
            parity[c] = 0;
            seen[c] = 0;
        }
    }
    return SparseBitMatrix(a.rows(), b.cols(), std::move(out));
}

std::optional<BitVector> solve(const SparseBitMatrix &m, const BitVector &target) {
    if (target.length() != m.rows()) {
        throw DomainError(errors::kDimensionMismatch, "solve: target length differs from row count");
    }
    DenseBitMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (auto c : m.row(r)) aug.set(r, c, true);
    }
    for (auto r : target.support()) aug.set(r, m.cols(), true);
    auto pivots = aug.rref();
    std::vector<std::size_t> solution;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols()) return std::nullopt;
        if (aug.get(r, m.cols())) solution.push_back(pivots[r]);
    }
    return BitVector(m.cols(), std::move(solution));
}

bool in_row_space(const SparseBitMatrix &m, const BitVector &v) { return solve(m.transpose(), v).has_value(); }

bool row_space_contains(const SparseBitMatrix &b, const SparseBitMatrix &a) {
    if (a.cols() != b.cols()) throw DomainError(errors::kDimensionMismatch, "row spaces of different lengths");
    RowSpace space(b);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (!space.contains(a.row_vector(r))) return false;
    }
    return true;
}

// ------------------------------------------------------------------ RowSpace

RowSpace::RowSpace(std::size_t length) : length_(length), words_(word_count(length)) {}

RowSpace::RowSpace(const SparseBitMatrix &m) : RowSpace(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) insert(m.row_vector(r));
}

void RowSpace::reduce(std::vector<std::uint64_t> &words) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        auto p = pivots_[i];
        if ((words[p / 64] >> (p % 64)) & 1U) {
            const auto &row = rows_[i];
            for (std::size_t w = p / 64; w < words_; ++w) words[w] ^= row[w];
        }
    }
}

bool RowSpace::insert(const BitVector &v) {
    if (v.length() != length_) throw DomainError(errors::kDimensionMismatch, "RowSpace: length mismatch");
    auto words = pack(length_, v.support());
    reduce(words);
    for (std::size_t w = 0; w < words_; ++w) {
        if (words[w]) {
            pivots_.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(words[w])));
            rows_.push_back(std::move(words));
            return true;
        }
    }
    return false;
}

bool RowSpace::contains(const BitVector &v) const {
    if (v.length() != length_) throw DomainError(errors::kDimensionMismatch, "RowSpace: length mismatch");
    auto words = pack(length_, v.support());
    reduce(words);
    return std::all_of(words.begin(), words.end(), [](std::uint64_t w) { return w == 0; });
}

}  // namespace qwr
