#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qwr {

/// Nonnegative rational; a zero denominator encodes +infinity.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t num, std::int64_t den);
    static Rational infinity() { return {1, 0}; }
    /// "p/q" or an integer; throws InvalidArgument otherwise.
    static Rational parse(const std::string &text);
    bool is_infinite() const { return den == 0; }
    double to_double() const;
    std::string to_string() const;

    friend bool operator==(const Rational &a, const Rational &b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rational &a, const Rational &b);
    friend bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }
    friend bool operator>=(const Rational &a, const Rational &b) { return !(a < b); }
    friend bool operator>(const Rational &a, const Rational &b) { return b < a; }
};

/// Undirected multigraph; self-loops are rejected.
class Graph {
   public:
    Graph() = default;
    explicit Graph(std::size_t vertices) : vertices_(vertices) {}
    Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);

    std::size_t vertex_count() const noexcept { return vertices_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>> &edges() const noexcept { return edges_; }
    std::size_t add_edge(std::size_t a, std::size_t b);

    std::vector<std::size_t> degrees() const;
    /// Incident edge indices per vertex.
    std::vector<std::vector<std::size_t>> incidence() const;
    /// Vertex components ordered by smallest member, each sorted.
    std::vector<std::vector<std::size_t>> components() const;
    std::size_t component_count() const { return components().size(); }

   private:
    std::size_t vertices_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

struct CheegerResult {
    Rational value;
    /// False when some component exceeded the exhaustive threshold and its
    /// value is the spectral lower bound lambda_2 / 2 (rounded down).
    bool exact = true;
};

inline constexpr std::size_t kDefaultCheegerExhaustiveVertices = 22;

/// Edge-expansion constant: min over components of min over vertex subsets
/// W with 0 < |W| <= |C|/2 of |boundary(W)| / |W|. Isolated vertices impose
/// no constraint; a graph with no edges at all returns infinity.
CheegerResult cheeger(const Graph &g, std::size_t exhaustive_threshold = kDefaultCheegerExhaustiveVertices);
/// Exhaustive value for one connected vertex set (used by tests as oracle
/// glue); `members` must induce a connected subgraph.
Rational cheeger_component_exact(const Graph &g, const std::vector<std::size_t> &members);
/// Cheeger lower bound lambda_2(L) / 2 of one component.
double cheeger_component_spectral_bound(const Graph &g, const std::vector<std::size_t> &members);

}  // namespace qwr
