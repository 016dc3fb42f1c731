#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qwr/code.hpp"
#include "qwr/complex.hpp"
#include "qwr/f2.hpp"
#include "qwr/graph.hpp"
#include "qwr/report.hpp"

namespace qwr {

struct ConeInput {
    CssCode base;
    /// Z-stabilizer rows of `base` kept verbatim (the code C').
    std::vector<std::size_t> direct_z;
    /// Qubit sets whose Z-products are induced.
    std::vector<std::vector<std::size_t>> q_sets;
};

/// For every X-stabilizer touching Q (ascending), its crossing qubits split
/// into pairs (each pair stored with the smaller qubit first).
struct Pairing {
    std::vector<std::size_t> stabilizers;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;

    friend bool operator==(const Pairing &, const Pairing &) = default;
};

/// A simple closed walk: edges[k] joins vertices[k] and vertices[k + 1]
/// (cyclically).
struct Cycle {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
};

/// Fundamental cycles of a breadth-first spanning forest rooted at the
/// lowest vertex of each component, one per non-tree edge in edge order.
std::vector<Cycle> cycle_basis(const Graph &g);

/// The complex B_i (optionally with redundancies, i.e. B-bar_i): 1-cells are
/// the qubits of Q, 0-cells are (stabilizer, pair) tuples, -1-cells are
/// cycles of the graph G_i whose vertices are the 1-cells and whose edges
/// are the 0-cells.
struct BComplex {
    /// Marks tuples on which the chain map vanishes (augmentation edges).
    static constexpr std::size_t kNoStabilizer = static_cast<std::size_t>(-1);

    struct Tuple {
        std::size_t stabilizer = 0;
        std::size_t a = 0;  // local vertex indices, a < b
        std::size_t b = 0;
    };

    std::vector<std::size_t> qubits;
    std::vector<Tuple> tuples;
    std::vector<Cycle> relations;
    Pairing pairing;
    /// Tuples without a stabilizer joining components of G that lie in one
    /// component of G_Q (appended after the paired tuples).
    std::size_t bridges = 0;

    Graph graph() const;
    /// tuples x qubits
    SparseBitMatrix d1() const;
    /// relations x tuples
    SparseBitMatrix d0() const;
    ChainComplex complex() const;
    std::size_t zeroth_homology() const;
};

/// Default pairing: crossings of each stabilizer sorted and paired
/// consecutively. Throws OddCrossingParity.
Pairing initial_pairing(const CssCode &code, const std::vector<std::size_t> &q_set);

/// Crossings of each stabilizer shuffled and paired consecutively.
Pairing random_pairing(const CssCode &code, const std::vector<std::size_t> &q_set, std::uint64_t seed);

/// Re-pairs crossings across components of G until its component count
/// matches G_Q or no single re-pairing lowers it.
Pairing fix_pairing(const CssCode &code, const std::vector<std::size_t> &q_set, const Pairing &initial);

/// Without a pairing, uses fix_pairing(initial_pairing(...)). Re-pairing
/// cannot always merge components of G (two pairs of one stabilizer that are
/// both bridges stay split), so with `bridge` the remaining components of G
/// inside one component of G_Q are chained by tuples on which the chain map
/// vanishes, joining their lowest vertices.
BComplex build_b_complex(const CssCode &code, std::vector<std::size_t> q_set,
                         const std::optional<Pairing> &pairing = std::nullopt, bool with_redundancies = true,
                         bool bridge = true);

/// One complex per q-set, built concurrently.
std::vector<BComplex> build_b_complexes(const CssCode &code, const std::vector<std::vector<std::size_t>> &q_sets,
                                        bool with_redundancies = true, bool bridge = true);

/// Same qubits and X-stabilizers as the base; Z-stabilizers are the direct
/// rows followed by one component product per connected component of each
/// G_i.
CssCode induced_code(const ConeInput &input, const std::vector<BComplex> &complexes);

/// Index layout of a cone code. Qubits: base qubits, then the tuples of each
/// complex. X-stabilizers: base rows, then the relations of each complex.
/// Z-stabilizers: direct rows, then the 1-cells of each complex.
struct ConeLayout {
    std::size_t base_qubits = 0;
    std::size_t base_x = 0;
    std::size_t direct = 0;
    std::vector<std::size_t> tuple_offset;
    std::vector<std::size_t> relation_offset;
    std::vector<std::size_t> cell_offset;
};

/// An added X-stabilizer viewed as a disc glued along a cycle: `vertices`
/// are cone Z-stabilizer rows and `edges` cone qubits.
struct Disc {
    std::size_t x_stabilizer = 0;
    std::size_t complex = 0;
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
};

struct ConeCode {
    CssCode code;
    CssCode induced;
    ConeLayout layout;
    std::vector<Disc> discs;
    TransformReport report;
};

struct ConeOptions {
    /// Reject complexes with nontrivial zeroth homology.
    bool require_trivial_homology = true;
    /// Exhaustive soundness is computed for complexes up to this many 1-cells.
    std::size_t soundness_max_vertices = 16;
};

ConeCode cone_code(const ConeInput &input, const std::vector<BComplex> &complexes, const ConeOptions &options = {});

/// Chords i <-> w - i of a w-gon that do not join neighbours, and the faces
/// they cut it into (as cyclically ordered boundary lists where values < w
/// are polygon edges and w + c is chord c).
struct ChordCellulation {
    std::vector<std::pair<std::size_t, std::size_t>> chords;
    std::vector<std::vector<std::size_t>> faces;
};

ChordCellulation chord_cellulation(std::size_t w);

inline constexpr std::size_t kDefaultDiscThreshold = 5;

struct ReducedCone {
    CssCode code;
    std::size_t ell_prime = 1;
    std::vector<std::size_t> disc_heights;
    std::size_t chords = 0;
    TransformReport report;
};

/// Cellulates every disc heavier than `threshold` and thickens dually by
/// ell_prime, placing each disc (with its chords and faces) at one height so
/// that discs sharing a vertex never share a height. Without ell_prime the
/// greedy coloring's height count is used. Throws HeightSearchFailed when
/// the given ell_prime admits no such placement.
ReducedCone reduce_cone(const ConeCode &cone, std::optional<std::size_t> ell_prime, std::uint64_t seed,
                        std::size_t threshold = kDefaultDiscThreshold);

}  // namespace qwr
