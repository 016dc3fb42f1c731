#include "qwr/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "qwr/error.hpp"

namespace qwr {

Rational Rational::of(std::int64_t num, std::int64_t den) {
    if (den == 0) return infinity();
    if (den < 0) {
        num = -num;
        den = -den;
    }
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

Rational Rational::parse(const std::string &text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const auto v = std::stoll(text, &used);
            if (used == text.size() && v >= 0) return of(v, 1);
        } else {
            const auto num_text = text.substr(0, slash);
            const auto den_text = text.substr(slash + 1);
            std::size_t used_den = 0;
            const auto num = std::stoll(num_text, &used);
            const auto den = std::stoll(den_text, &used_den);
            if (used == num_text.size() && used_den == den_text.size() && num >= 0 && den > 0) return of(num, den);
        }
    } catch (const std::exception &) {
    }
    throw DomainError(errors::kInvalidArgument, "expected a nonnegative rational such as \"1/2\"", {{"value", text}});
}

double Rational::to_double() const {
    return is_infinite() ? INFINITY : static_cast<double>(num) / static_cast<double>(den);
}

std::string Rational::to_string() const {
    if (is_infinite()) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

__extension__ using Wide = __int128;

bool operator<(const Rational &a, const Rational &b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return static_cast<Wide>(a.num) * b.den < static_cast<Wide>(b.num) * a.den;
}

Graph::Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges) : vertices_(vertices) {
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) add_edge(a, b);
}

std::size_t Graph::add_edge(std::size_t a, std::size_t b) {
    if (a >= vertices_ || b >= vertices_) {
        throw DomainError(errors::kIndexOutOfRange, "edge endpoint out of range",
                          {{"a", a}, {"b", b}, {"vertices", vertices_}});
    }
    if (a == b) throw DomainError(errors::kInvalidArgument, "self-loops are not allowed", {{"vertex", a}});
    edges_.emplace_back(std::min(a, b), std::max(a, b));
    return edges_.size() - 1;
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> d(vertices_, 0);
    for (auto [a, b] : edges_) {
        ++d[a];
        ++d[b];
    }
    return d;
}

std::vector<std::vector<std::size_t>> Graph::incidence() const {
    std::vector<std::vector<std::size_t>> inc(vertices_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        inc[edges_[e].first].push_back(e);
        inc[edges_[e].second].push_back(e);
    }
    return inc;
}

std::vector<std::vector<std::size_t>> Graph::components() const {
    std::vector<std::size_t> parent(vertices_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : edges_) parent[find(a)] = find(b);
    std::vector<std::vector<std::size_t>> by_root(vertices_);
    for (std::size_t v = 0; v < vertices_; ++v) by_root[find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto &c : by_root) {
        if (!c.empty()) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational cheeger_component_exact(const Graph &g, const std::vector<std::size_t> &members) {
    const std::size_t c = members.size();
    if (c < 2) return Rational::infinity();
    if (c > 62) throw DomainError(errors::kBudgetExceeded, "component too large for exhaustive Cheeger search");
    std::vector<std::size_t> local(g.vertex_count(), SIZE_MAX);
    for (std::size_t i = 0; i < c; ++i) local[members[i]] = i;
    // Neighbour lists with multiplicity, in local indices.
    std::vector<std::vector<std::size_t>> nbrs(c);
    for (auto [a, b] : g.edges()) {
        if (local[a] == SIZE_MAX) continue;
        nbrs[local[a]].push_back(local[b]);
        nbrs[local[b]].push_back(local[a]);
    }
    std::vector<std::uint8_t> in(c, 0);
    std::int64_t boundary = 0;
    std::size_t size = 0;
    Rational best = Rational::infinity();
    const std::uint64_t total = std::uint64_t{1} << c;
    for (std::uint64_t i = 1; i < total; ++i) {
        auto v = static_cast<std::size_t>(std::countr_zero(i));
        std::int64_t inside = 0;
        for (auto u : nbrs[v]) inside += in[u];
        const auto deg = static_cast<std::int64_t>(nbrs[v].size());
        if (in[v]) {
            in[v] = 0;
            --size;
            boundary -= deg - 2 * inside;
        } else {
            in[v] = 1;
            ++size;
            boundary += deg - 2 * inside;
        }
        if (size == 0 || 2 * size > c) continue;
        // boundary/size < best  <=>  boundary*best.den < best.num*size
        if (best.is_infinite() || boundary * best.den < best.num * static_cast<std::int64_t>(size)) {
            best = Rational::of(boundary, static_cast<std::int64_t>(size));
        }
    }
    return best;
}

double cheeger_component_spectral_bound(const Graph &g, const std::vector<std::size_t> &members) {
    const std::size_t c = members.size();
    if (c < 2) return INFINITY;
    std::vector<std::size_t> local(g.vertex_count(), SIZE_MAX);
    for (std::size_t i = 0; i < c; ++i) local[members[i]] = i;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    for (auto [a, b] : g.edges()) {
        if (local[a] == SIZE_MAX) continue;
        auto i = static_cast<Eigen::Index>(local[a]);
        auto j = static_cast<Eigen::Index>(local[b]);
        lap(i, i) += 1.0;
        lap(j, j) += 1.0;
        lap(i, j) -= 1.0;
        lap(j, i) -= 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    return std::max(0.0, solver.eigenvalues()(1) / 2.0);
}

CheegerResult cheeger(const Graph &g, std::size_t exhaustive_threshold) {
    if (g.vertex_count() == 0) throw DomainError(errors::kEmptyGraph, "Cheeger constant of an empty graph");
    CheegerResult result{Rational::infinity(), true};
    for (const auto &comp : g.components()) {
        if (comp.size() < 2) continue;
        Rational value;
        if (comp.size() <= exhaustive_threshold) {
            value = cheeger_component_exact(g, comp);
        } else {
            constexpr std::int64_t kScale = 1000000;
            auto bound = cheeger_component_spectral_bound(g, comp);
            value = Rational::of(static_cast<std::int64_t>(std::floor(bound * kScale)), kScale);
            result.exact = false;
        }
        if (value < result.value) result.value = value;
    }
    return result;
}

}  // namespace qwr
