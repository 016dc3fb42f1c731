#include "qwr/randapplic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "qwr/cone.hpp"
#include "qwr/distance.hpp"
#include "qwr/error.hpp"
#include "qwr/parallel.hpp"
#include "qwr/report.hpp"
#include "qwr/rng.hpp"

namespace qwr {

double RandomCodeSpec::delta() const { return beta * std::log(static_cast<double>(n)); }

std::size_t RandomCodeSpec::x_rows() const {
    return static_cast<std::size_t>(static_cast<std::int64_t>(n) * x_check_fraction.num / x_check_fraction.den);
}

std::size_t RandomCodeSpec::z_rows() const { return z_count.value_or(n / 4); }

void check_spec(const RandomCodeSpec &spec) {
    if (spec.n < 8) throw DomainError(errors::kInvalidArgument, "random codes need N >= 8", {{"n", spec.n}});
    if (!(spec.beta > 0)) throw DomainError(errors::kInvalidArgument, "beta must be positive", {{"beta", spec.beta}});
    const auto &f = spec.x_check_fraction;
    if (f.is_infinite() || f.num <= 0 || f.num > f.den) {
        throw DomainError(errors::kInvalidArgument, "x_check_fraction must lie in (0, 1]",
                          {{"x_check_fraction", f.to_string()}});
    }
}

SparseBitMatrix sample_classical(const RandomCodeSpec &spec) {
    double p = spec.delta() / static_cast<double>(spec.n);
    if (p > 1 + 1e-12) {
        throw DomainError(errors::kInvalidArgument, "Delta / N exceeds 1", {{"delta", spec.delta()}, {"n", spec.n}});
    }
    if (p > 1 - 1e-12) p = 1;
    Rng rng(derive_seed(spec.seed, "classical"));
    const auto rows = spec.x_rows();
    std::vector<std::vector<std::size_t>> supports(rows);
    for (auto &row : supports) {
        for (std::size_t q = 0; q < spec.n; ++q) {
            if (rng.bernoulli(p)) row.push_back(q);
        }
    }
    return SparseBitMatrix(rows, spec.n, std::move(supports));
}

ZSample sample_z_stabilizers(const SparseBitMatrix &x_checks, std::size_t count, std::uint64_t seed) {
    const auto basis = kernel_basis(x_checks);
    const std::size_t n = x_checks.cols();
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        BitVector v(n);
        for (const auto &b : basis) {
            if (rng.next() >> 63) v = v ^ b;
        }
        rows.push_back(v.support());
    }
    ZSample out;
    out.rows = SparseBitMatrix(count, n, std::move(rows));
    out.kernel_dimension = basis.size();
    out.rank = rank(out.rows);
    return out;
}

namespace {

double sampled_cheeger(const Graph &g, const std::vector<std::vector<std::size_t>> &incidence,
                       const std::vector<std::size_t> &comp, Rng &rng, std::size_t samples) {
    const auto &edges = g.edges();
    double best = std::numeric_limits<double>::infinity();
    for (auto v : comp) best = std::min(best, static_cast<double>(incidence[v].size()));
    std::vector<char> inside(g.vertex_count(), 0);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto target = 1 + static_cast<std::size_t>(rng.below(comp.size() / 2));
        std::vector<std::size_t> members{comp[rng.below(comp.size())]};
        inside[members[0]] = 1;
        std::deque<std::size_t> frontier{members[0]};
        while (members.size() < target && !frontier.empty()) {
            const auto v = frontier.front();
            frontier.pop_front();
            auto around = incidence[v];
            rng.shuffle(around);
            for (auto e : around) {
                const auto w = edges[e].first == v ? edges[e].second : edges[e].first;
                if (inside[w] || members.size() == target) continue;
                inside[w] = 1;
                members.push_back(w);
                frontier.push_back(w);
            }
        }
        std::size_t boundary = 0;
        for (auto v : members) {
            for (auto e : incidence[v]) {
                const auto w = edges[e].first == v ? edges[e].second : edges[e].first;
                if (!inside[w]) ++boundary;
            }
        }
        best = std::min(best, static_cast<double>(boundary) / static_cast<double>(members.size()));
        for (auto v : members) inside[v] = 0;
    }
    return best;
}

}  // namespace

GraphDiagnostics graph_diagnostics(const Graph &g, std::uint64_t seed, std::size_t exhaustive_threshold,
                                   std::size_t samples) {
    GraphDiagnostics out;
    out.vertices = g.vertex_count();
    out.edges = g.edge_count();
    const auto comps = g.components();
    out.components = comps.size();
    out.cheeger = std::numeric_limits<double>::infinity();
    out.cheeger_lower = std::numeric_limits<double>::infinity();
    const auto incidence = g.incidence();
    Rng rng(seed);
    for (const auto &comp : comps) {
        if (comp.size() < 2) continue;
        out.cheeger_lower = std::min(out.cheeger_lower, cheeger_component_spectral_bound(g, comp));
        if (comp.size() <= exhaustive_threshold) {
            out.cheeger = std::min(out.cheeger, cheeger_component_exact(g, comp).to_double());
        } else {
            out.cheeger_exact = false;
            out.cheeger = std::min(out.cheeger, sampled_cheeger(g, incidence, comp, rng, samples));
        }
    }
    return out;
}

ApplicCode build_applic_code(const RandomCodeSpec &spec, const ApplicOptions &options) {
    check_spec(spec);
    ApplicCode out;
    auto &d = out.diagnostics;
    d.delta = spec.delta();
    d.probability = d.delta / static_cast<double>(spec.n);

    auto hx = sample_classical(spec);
    const auto z = sample_z_stabilizers(hx, spec.z_rows(), derive_seed(spec.seed, "kernel"));
    d.x_rank = rank(hx);
    d.b1 = spec.n - d.x_rank;
    d.b0 = hx.rows() - d.x_rank;
    d.euler_identity = static_cast<std::int64_t>(d.b1) - static_cast<std::int64_t>(d.b0) ==
                       static_cast<std::int64_t>(spec.n) - static_cast<std::int64_t>(hx.rows());
    const auto weights = hx.col_weights();
    d.isolated_qubits = static_cast<std::size_t>(std::count(weights.begin(), weights.end(), 0));
    d.z_rank = z.rank;
    d.z_independent = z.independent();
    d.z_degenerate = z.degenerate();

    const CssCode classical(spec.n, hx, SparseBitMatrix(0, spec.n));
    d.classical_distance =
        distance_estimate(classical, PauliKind::Z, options.distance_trials, derive_seed(spec.seed, "distance"));
    if (d.classical_distance.value) {
        d.relative_distance = static_cast<double>(*d.classical_distance.value) / static_cast<double>(spec.n);
    }

    out.code = CssCode(spec.n, std::move(hx), z.rows,
                       {{"family", "random"},
                        {"n", spec.n},
                        {"beta", spec.beta},
                        {"x_check_fraction", spec.x_check_fraction.to_string()},
                        {"seed", spec.seed}});
    d.k = spec.n - d.x_rank - d.z_rank;

    if (options.graphs) {
        const auto &rows = out.code.hz();
        d.graphs.resize(rows.rows());
        parallel_for(rows.rows(), [&](std::size_t i) {
            if (rows.row(i).empty()) return;
            const std::vector<std::size_t> q_set(rows.row(i).begin(), rows.row(i).end());
            const auto pairing = fix_pairing(
                out.code, q_set, random_pairing(out.code, q_set, derive_seed(derive_seed(spec.seed, "pairing"), i)));
            const auto b = build_b_complex(out.code, q_set, pairing, false);
            d.graphs[i] = graph_diagnostics(b.graph(), derive_seed(derive_seed(spec.seed, "cheeger"), i),
                                            options.cheeger_exhaustive_threshold, options.cheeger_samples);
        });
        for (const auto &g : d.graphs) {
            if (g.vertices == 0) continue;
            d.all_connected = d.all_connected && g.connected();
            if (g.connected()) d.min_cheeger = std::min(d.min_cheeger.value_or(g.cheeger), g.cheeger);
        }
    }
    return out;
}

nlohmann::json ApplicDiagnostics::to_json() const {
    auto finite = [](double v) -> nlohmann::json {
        if (std::isinf(v)) return nullptr;
        return v;
    };
    nlohmann::json graphs_json = nlohmann::json::array();
    for (const auto &g : graphs) {
        graphs_json.push_back({{"vertices", g.vertices},
                               {"edges", g.edges},
                               {"components", g.components},
                               {"connected", g.connected()},
                               {"cheeger", finite(g.cheeger)},
                               {"cheeger_exact", g.cheeger_exact},
                               {"cheeger_lower", finite(g.cheeger_lower)}});
    }
    return {{"delta", delta},
            {"probability", probability},
            {"x_rank", x_rank},
            {"b0", b0},
            {"b1", b1},
            {"euler_identity", euler_identity},
            {"isolated_qubits", isolated_qubits},
            {"z_rank", z_rank},
            {"z_independent", z_independent},
            {"z_degenerate", z_degenerate},
            {"k", k},
            {"classical_distance", qwr::to_json(classical_distance)},
            {"relative_distance", relative_distance},
            {"all_connected", all_connected},
            {"min_cheeger", min_cheeger ? finite(*min_cheeger) : nlohmann::json(nullptr)},
            {"graphs", graphs_json}};
}

}  // namespace qwr
