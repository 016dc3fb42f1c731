#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qwr/code.hpp"
#include "qwr/cone.hpp"
#include "qwr/graph.hpp"
#include "qwr/report.hpp"

namespace qwr {

struct ConnectPlan {
    struct Entry {
        std::size_t stabilizer = 0;
        /// (q'_a, q_{a+1}) for a = 1..k-1: the lowest qubit of consecutive
        /// components of G_Q. Qubits under no X-stabilizer are first chained
        /// among themselves (the pair then holds the previous connecting
        /// qubit), and the survivor opens the chain.
        std::vector<std::pair<std::size_t, std::size_t>> representatives;
        /// r_a, one per representative pair.
        std::vector<std::size_t> connecting_qubits;
        /// Row index of each added Z_{q'_a} Z_{q_{a+1}} Z_{r_a}.
        std::vector<std::size_t> added_stabilizers;
    };

    std::size_t original_qubits = 0;
    std::vector<Entry> entries;
};

struct Connected {
    CssCode code;
    ConnectPlan plan;
    TransformReport report;
};

/// Adds connecting qubits for every Z-stabilizer having a support component
/// whose Z-product is not a stabilizer; the stabilizer S becomes S times the
/// added triples. Reasonable codes are returned unchanged.
Connected connect(const CssCode &code);

struct AugmentOptions {
    std::size_t max_rounds = 20;
    /// Random matchings tried per round; the one giving the largest
    /// expansion is kept.
    std::size_t candidates = 8;
    std::size_t exhaustive_threshold = kDefaultCheegerExhaustiveVertices;
};

struct AugmentedGraph {
    Graph graph;
    std::vector<std::pair<std::size_t, std::size_t>> added;
    std::size_t max_degree_increase = 0;
    std::size_t rounds = 0;
    /// Smallest per-component expansion reached (infinity without edges).
    Rational achieved = Rational::infinity();
    bool exact = true;
};

/// Adds random matchings inside each component until every component has
/// edge expansion at least target_h. Throws AugmentationFailed (reporting the
/// best value reached) after max_rounds rounds.
AugmentedGraph augment_graph(const Graph &g, Rational target_h, std::uint64_t seed, const AugmentOptions &options = {});

/// B_i extended by one tuple per added edge (on which the chain map
/// vanishes), with the cycle basis recomputed.
BComplex augment_b_complex(const BComplex &b, const std::vector<std::pair<std::size_t, std::size_t>> &added,
                           bool with_redundancies = true);

struct SoundnessImprovement {
    std::vector<BComplex> complexes;
    std::vector<AugmentedGraph> graphs;
    TransformReport report;
};

/// Requires a reasonable code (NotReasonable otherwise).
SoundnessImprovement improve_soundness(const CssCode &code, const std::vector<std::vector<std::size_t>> &q_sets,
                                       Rational target_h, std::uint64_t seed, const AugmentOptions &options = {});

}  // namespace qwr
