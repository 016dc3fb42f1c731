#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwr/code.hpp"
#include "qwr/f2.hpp"
#include "qwr/graph.hpp"

namespace qwr {

/// Random code with X-checks of average weight Delta = beta ln N.
struct RandomCodeSpec {
    std::size_t n = 48;
    double beta = 5;
    Rational x_check_fraction = Rational::of(1, 2);
    /// Defaults to N / 4.
    std::optional<std::size_t> z_count;
    std::uint64_t seed = 0;

    double delta() const;
    std::size_t x_rows() const;
    std::size_t z_rows() const;
};

/// Throws InvalidArgument unless N >= 8, beta > 0 and the fraction lies in
/// (0, 1].
void check_spec(const RandomCodeSpec &spec);

/// (x_check_fraction N) x N matrix of i.i.d. Bernoulli(Delta / N) entries.
/// Throws InvalidArgument when Delta / N > 1.
SparseBitMatrix sample_classical(const RandomCodeSpec &spec);

struct ZSample {
    SparseBitMatrix rows;
    std::size_t kernel_dimension = 0;
    std::size_t rank = 0;
    bool independent() const { return rank == rows.rows(); }
    /// Only the zero vector could be drawn.
    bool degenerate() const { return kernel_dimension == 0; }
};

/// `count` uniform elements of ker(x_checks), drawn as uniform combinations
/// of a kernel basis.
ZSample sample_z_stabilizers(const SparseBitMatrix &x_checks, std::size_t count, std::uint64_t seed);

struct GraphDiagnostics {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t components = 0;
    /// Exact for small graphs, otherwise the smallest ratio among sampled
    /// subsets (an upper estimate).
    double cheeger = 0;
    bool cheeger_exact = true;
    /// lambda_2 / 2 (lower bound), reported for every graph.
    double cheeger_lower = 0;
    bool connected() const { return components <= 1; }
};

struct ApplicDiagnostics {
    double delta = 0;
    double probability = 0;
    std::size_t x_rank = 0;
    std::size_t b0 = 0;  // rank deficiency of the X-checks
    std::size_t b1 = 0;  // dim ker of the X-checks
    bool euler_identity = true;
    std::size_t isolated_qubits = 0;
    std::size_t z_rank = 0;
    bool z_independent = true;
    bool z_degenerate = false;
    std::size_t k = 0;
    DistanceResult classical_distance;
    double relative_distance = 0;
    std::vector<GraphDiagnostics> graphs;
    bool all_connected = true;
    std::optional<double> min_cheeger;

    nlohmann::json to_json() const;
};

struct ApplicOptions {
    std::size_t distance_trials = 24;
    std::size_t cheeger_exhaustive_threshold = 16;
    std::size_t cheeger_samples = 400;
    /// Skip the per-Q graph diagnostics.
    bool graphs = true;
};

struct ApplicCode {
    CssCode code;
    ApplicDiagnostics diagnostics;
};

ApplicCode build_applic_code(const RandomCodeSpec &spec, const ApplicOptions &options = {});

/// Cheeger estimate of one graph: exact up to `exhaustive_threshold`
/// vertices, otherwise the minimum over `samples` random connected subsets
/// of each component (grown breadth-first from a random vertex).
GraphDiagnostics graph_diagnostics(const Graph &g, std::uint64_t seed, std::size_t exhaustive_threshold,
                                   std::size_t samples);

}  // namespace qwr
