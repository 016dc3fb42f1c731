#include "qwr/complex.hpp"

#include <algorithm>
#include <bit>

#include "qwr/error.hpp"

namespace qwr {

ChainComplex::ChainComplex(int lowest_degree, std::vector<std::size_t> dims)
    : lowest_(lowest_degree), dims_(std::move(dims)) {
    boundaries_.reserve(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        boundaries_.emplace_back(i == 0 ? 0 : dims_[i - 1], dims_[i]);
    }
}

std::size_t ChainComplex::dim(int degree) const {
    if (degree < lowest_ || degree > highest()) return 0;
    return dims_[static_cast<std::size_t>(degree - lowest_)];
}

SparseBitMatrix ChainComplex::boundary(int degree) const {
    if (degree <= lowest_ || degree > highest()) return SparseBitMatrix(dim(degree - 1), dim(degree));
    return boundaries_[static_cast<std::size_t>(degree - lowest_)];
}

void ChainComplex::set_boundary(int degree, SparseBitMatrix d) {
    if (degree <= lowest_ || degree > highest()) {
        throw DomainError(errors::kIndexOutOfRange, "boundary degree outside the complex", {{"degree", degree}});
    }
    if (d.rows() != dim(degree - 1) || d.cols() != dim(degree)) {
        throw DomainError(errors::kDimensionMismatch, "boundary matrix has the wrong shape",
                          {{"degree", degree}, {"rows", d.rows()}, {"cols", d.cols()}});
    }
    boundaries_[static_cast<std::size_t>(degree - lowest_)] = std::move(d);
}

bool ChainComplex::is_valid() const {
    for (int j = lowest_ + 2; j <= highest(); ++j) {
        if (!mat_mul(boundary(j - 1), boundary(j)).is_zero()) return false;
    }
    return true;
}

ChainComplex ChainComplex::of_code(const CssCode &code) {
    ChainComplex c(0, {code.hx().rows(), code.n(), code.hz().rows()});
    c.set_boundary(1, code.hx());
    c.set_boundary(2, code.hz().transpose());
    return c;
}

CssCode ChainComplex::to_code(int qubit_degree) const {
    auto hx = boundary(qubit_degree);
    auto hz = boundary(qubit_degree + 1).transpose();
    return CssCode(dim(qubit_degree), std::move(hx), std::move(hz));
}

ChainComplex ChainComplex::direct_sum(const std::vector<ChainComplex> &parts) {
    if (parts.empty()) return {};
    int lo = parts.front().lowest();
    int hi = parts.front().highest();
    for (const auto &p : parts) {
        lo = std::min(lo, p.lowest());
        hi = std::max(hi, p.highest());
    }
    std::vector<std::size_t> dims;
    for (int j = lo; j <= hi; ++j) {
        std::size_t d = 0;
        for (const auto &p : parts) d += p.dim(j);
        dims.push_back(d);
    }
    ChainComplex sum(lo, dims);
    for (int j = lo + 1; j <= hi; ++j) {
        std::vector<std::vector<std::size_t>> rows(sum.dim(j - 1));
        std::size_t row_off = 0;
        std::size_t col_off = 0;
        for (const auto &p : parts) {
            auto d = p.boundary(j);
            for (std::size_t r = 0; r < d.rows(); ++r) {
                for (auto c : d.row(r)) rows[row_off + r].push_back(col_off + c);
            }
            row_off += p.dim(j - 1);
            col_off += p.dim(j);
        }
        sum.set_boundary(j, SparseBitMatrix(sum.dim(j - 1), sum.dim(j), std::move(rows)));
    }
    return sum;
}

SparseBitMatrix ChainMap::at(int degree, std::size_t rows, std::size_t cols) const {
    auto idx = degree - lowest;
    if (idx < 0 || idx >= static_cast<int>(components.size())) return SparseBitMatrix(rows, cols);
    const auto &m = components[static_cast<std::size_t>(idx)];
    if (m.rows() != rows || m.cols() != cols) {
        throw DomainError(errors::kDimensionMismatch, "chain map component has the wrong shape",
                          {{"degree", degree}, {"rows", m.rows()}, {"cols", m.cols()}});
    }
    return m;
}

bool is_chain_map(const ChainComplex &source, const ChainComplex &target, const ChainMap &f) {
    for (int j = source.lowest(); j <= source.highest(); ++j) {
        auto fj = f.at(j, target.dim(j), source.dim(j));
        auto fj1 = f.at(j - 1, target.dim(j - 1), source.dim(j - 1));
        if (!(mat_mul(target.boundary(j), fj) == mat_mul(fj1, source.boundary(j)))) return false;
    }
    return true;
}

ChainComplex mapping_cone(const ChainComplex &a, const ChainComplex &b, const ChainMap &f) {
    const int lo = std::min(a.lowest(), b.lowest() + 1);
    const int hi = std::max(a.highest(), b.highest() + 1);
    std::vector<std::size_t> dims;
    for (int j = lo; j <= hi; ++j) dims.push_back(a.dim(j) + b.dim(j - 1));
    ChainComplex cone(lo, dims);
    for (int j = lo + 1; j <= hi; ++j) {
        // Rows: A_{j-1} then B_{j-2}; columns: A_j then B_{j-1}.
        const std::size_t a_rows = a.dim(j - 1);
        std::vector<std::vector<std::size_t>> rows(cone.dim(j - 1));
        auto da = a.boundary(j);
        auto fj = f.at(j - 1, a.dim(j - 1), b.dim(j - 1));
        auto db = b.boundary(j - 1);
        for (std::size_t r = 0; r < da.rows(); ++r) {
            for (auto c : da.row(r)) rows[r].push_back(c);
        }
        for (std::size_t r = 0; r < fj.rows(); ++r) {
            for (auto c : fj.row(r)) rows[r].push_back(a.dim(j) + c);
        }
        for (std::size_t r = 0; r < db.rows(); ++r) {
            for (auto c : db.row(r)) rows[a_rows + r].push_back(a.dim(j) + c);
        }
        cone.set_boundary(j, SparseBitMatrix(cone.dim(j - 1), cone.dim(j), std::move(rows)));
    }
    return cone;
}

std::vector<std::size_t> homology_ranks(const ChainComplex &complex) {
    if (!complex.is_valid()) {
        throw DomainError(errors::kComplexInvalid, "consecutive boundary maps do not compose to zero");
    }
    std::vector<std::size_t> ranks;
    for (int j = complex.lowest(); j <= complex.highest() + 1; ++j) ranks.push_back(rank(complex.boundary(j)));
    std::vector<std::size_t> betti;
    for (int j = complex.lowest(); j <= complex.highest(); ++j) {
        auto idx = static_cast<std::size_t>(j - complex.lowest());
        betti.push_back(complex.dim(j) - ranks[idx] - ranks[idx + 1]);
    }
    return betti;
}

Rational soundness(const SparseBitMatrix &vertex_to_edge, const SparseBitMatrix &edge_to_relation,
                   const std::vector<bool> &counted, std::size_t max_vertices) {
    const std::size_t n_vertices = vertex_to_edge.cols();
    const std::size_t n_edges = vertex_to_edge.rows();
    if (edge_to_relation.cols() != n_edges) {
        throw DomainError(errors::kDimensionMismatch, "soundness: relation map does not act on the edges");
    }
    if (!mat_mul(edge_to_relation, vertex_to_edge).is_zero()) {
        throw DomainError(errors::kComplexInvalid, "soundness: boundary maps do not compose to zero");
    }
    const std::size_t h0 = n_edges - rank(edge_to_relation) - rank(vertex_to_edge);
    if (h0 != 0) {
        throw DomainError(errors::kNontrivialHomology, "complex has nontrivial zeroth homology", {{"b0", h0}});
    }
    if (n_vertices > max_vertices || n_vertices > 62) {
        throw DomainError(errors::kBudgetExceeded, "too many 1-cells for exhaustive soundness",
                          {{"vertices", n_vertices}, {"limit", max_vertices}});
    }
    std::uint64_t counted_mask = 0;
    for (std::size_t v = 0; v < n_vertices; ++v) {
        if (counted.empty() || counted[v]) counted_mask |= std::uint64_t{1} << v;
    }
    // Span of ker(d1) as vertex masks: every preimage of u is v + kernel.
    std::vector<std::uint64_t> kernel_span{0};
    for (const auto &k : kernel_basis(vertex_to_edge)) {
        std::uint64_t mask = 0;
        for (auto v : k.support()) mask |= std::uint64_t{1} << v;
        const auto n = kernel_span.size();
        for (std::size_t i = 0; i < n; ++i) kernel_span.push_back(kernel_span[i] ^ mask);
    }
    const std::size_t edge_words = (n_edges + 63) / 64;
    std::vector<std::vector<std::uint64_t>> columns(n_vertices, std::vector<std::uint64_t>(edge_words, 0));
    for (std::size_t e = 0; e < n_edges; ++e) {
        for (auto v : vertex_to_edge.row(e)) columns[v][e / 64] ^= std::uint64_t{1} << (e % 64);
    }
    std::vector<std::uint64_t> u(edge_words, 0);
    std::uint64_t v_mask = 0;
    Rational best = Rational::infinity();
    const std::uint64_t total = std::uint64_t{1} << n_vertices;
    for (std::uint64_t i = 1; i < total; ++i) {
        auto flip = static_cast<std::size_t>(std::countr_zero(i));
        v_mask ^= std::uint64_t{1} << flip;
        std::int64_t u_weight = 0;
        for (std::size_t w = 0; w < edge_words; ++w) {
            u[w] ^= columns[flip][w];
            u_weight += std::popcount(u[w]);
        }
        if (u_weight == 0) continue;
        std::int64_t min_v = INT64_MAX;
        for (auto k : kernel_span) {
            min_v = std::min<std::int64_t>(min_v, std::popcount((v_mask ^ k) & counted_mask));
        }
        if (min_v == 0) continue;
        auto ratio = Rational::of(u_weight, min_v);
        if (ratio < best) best = ratio;
    }
    return best;
}

}  // namespace qwr
