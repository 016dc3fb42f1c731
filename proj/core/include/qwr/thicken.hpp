#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qwr/code.hpp"
#include "qwr/f2.hpp"
#include "qwr/report.hpp"

namespace qwr {

/// Cellulated interval: ell 0-cells, ell - 1 1-cells, edge e joining
/// vertices e and e + 1.
struct IntervalComplex {
    std::size_t ell = 0;
    SparseBitMatrix boundary;  // ell x (ell - 1)

    static IntervalComplex of(std::size_t ell);
};

/// Height (0-based) of the kept copy of each Z-stabilizer.
using HeightAssignment = std::vector<std::size_t>;

/// Index layout of a thickened code built from a code with N qubits, n_X
/// X-stabilizers and n_Z Z-stabilizers.
struct ThickenLayout {
    std::size_t n = 0;
    std::size_t n_x = 0;
    std::size_t n_z = 0;
    std::size_t ell = 0;

    std::size_t qubit(std::size_t q, std::size_t m) const { return m * n + q; }
    std::size_t vertical_qubit(std::size_t x, std::size_t e) const { return n * ell + e * n_x + x; }
    std::size_t x_stabilizer(std::size_t x, std::size_t m) const { return m * n_x + x; }
    /// Kept C2 x E0 stabilizers come first, in original order.
    std::size_t kept_stabilizer(std::size_t z) const { return z; }
    std::size_t cross_stabilizer(std::size_t q, std::size_t e) const { return n_z + e * n + q; }
};

struct Thickening {
    CssCode code;
    ThickenLayout layout;
    TransformReport report;
};

/// The product with the interval, keeping every C1 x E1 Z-stabilizer and one
/// C2 x E0 copy of each Z-stabilizer at its assigned height.
Thickening thicken(const CssCode &code, std::size_t ell, const HeightAssignment &heights);

/// Largest number of kept Z-stabilizers sharing one qubit at one height.
std::size_t height_multiplicity(const CssCode &code, const HeightAssignment &heights);

inline constexpr std::size_t kDefaultHeightRetries = 1000;

struct HeightChoice {
    std::size_t ell = 0;
    HeightAssignment heights;
    std::size_t attempts = 0;
    std::size_t multiplicity = 0;
};

/// I.i.d. uniform heights, redrawn until the same-height multiplicity is at
/// most w. Throws RetriesExhausted with the offending qubit and the
/// smallest ell satisfying the local-lemma bound.
HeightChoice choose_heights_random(const CssCode &code, std::size_t ell, std::size_t w, std::uint64_t seed,
                                   std::size_t max_retries = kDefaultHeightRetries);

/// ell = q_Z w_Z + 1 (at least 2) with heights from a greedy proper coloring
/// of the conflict graph (Z-stabilizers sharing a qubit).
HeightChoice choose_heights_coloring(const CssCode &code);

/// Smallest ell with 2e C(q_Z, w+1) ell^{-w} min(q_Z w_Z, N) <= 1.
std::size_t local_lemma_ell(const CssCode &code, std::size_t w);

/// Interchanges X and Z.
CssCode dual(const CssCode &code);

}  // namespace qwr
