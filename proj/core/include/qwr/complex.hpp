#pragma once

#include <cstddef>
#include <vector>

#include "qwr/code.hpp"
#include "qwr/f2.hpp"
#include "qwr/graph.hpp"

namespace qwr {

/// A bounded chain complex over GF(2) occupying degrees
/// [lowest, lowest + dims.size()). boundary(j) maps degree j to j-1 and is
/// stored as a (dim_{j-1} x dim_j) matrix.
class ChainComplex {
   public:
    ChainComplex() = default;
    ChainComplex(int lowest_degree, std::vector<std::size_t> dims);

    int lowest() const noexcept { return lowest_; }
    int highest() const noexcept { return lowest_ + static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int degree) const;
    /// Boundary from `degree` to `degree - 1`; zero maps outside the range.
    SparseBitMatrix boundary(int degree) const;
    void set_boundary(int degree, SparseBitMatrix d);

    /// True iff every composite boundary(j-1) * boundary(j) vanishes.
    bool is_valid() const;

    /// The complex of a CSS code in degrees 0..2.
    static ChainComplex of_code(const CssCode &code);
    /// Reads a code back from degrees 0..2 (qubits in degree 1).
    CssCode to_code(int qubit_degree = 1) const;
    /// Direct sum, degrees aligned.
    static ChainComplex direct_sum(const std::vector<ChainComplex> &parts);

   private:
    int lowest_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<SparseBitMatrix> boundaries_;  // boundaries_[i] : degree lowest+i -> lowest+i-1
};

/// Degree-preserving linear map B -> A, one matrix (dim A_j x dim B_j) per
/// degree of B.
struct ChainMap {
    int lowest = 0;
    std::vector<SparseBitMatrix> components;

    SparseBitMatrix at(int degree, std::size_t rows, std::size_t cols) const;
};

bool is_chain_map(const ChainComplex &source, const ChainComplex &target, const ChainMap &f);

/// Cone(f)_j = A_j (+) B_{j-1}, boundary [[dA, f], [0, dB]].
ChainComplex mapping_cone(const ChainComplex &a, const ChainComplex &b, const ChainMap &f);

/// Betti numbers b_j for every degree of the complex, lowest first. Throws
/// ComplexInvalid when some composite boundary is nonzero.
std::vector<std::size_t> homology_ranks(const ChainComplex &complex);

/// Soundness factor of a graph-like complex with vertices (degree 1), edges
/// (degree 0) and relations (degree -1): the minimum over nonzero exact
/// 0-chains u of |u| / min{|v'| : dv = u}, where v' keeps only the 1-cells
/// flagged in `counted` (all of them when empty). Exhaustive over 1-chains.
Rational soundness(const SparseBitMatrix &vertex_to_edge, const SparseBitMatrix &edge_to_relation,
                   const std::vector<bool> &counted = {}, std::size_t max_vertices = 22);

}  // namespace qwr
