#include "qwr/robustify.hpp"

#include <algorithm>
#include <iterator>
#include <optional>

#include "qwr/error.hpp"
#include "qwr/parallel.hpp"
#include "qwr/rng.hpp"

namespace qwr {

namespace {

std::vector<std::size_t> symmetric_difference(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
    std::vector<std::size_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Connected connect(const CssCode &code) {
    const auto before = validate(code);
    const auto x_of = code.hx().column_supports();
    std::vector<std::vector<std::size_t>> x_rows = code.hx().row_supports();
    std::vector<std::vector<std::size_t>> z_rows = code.hz().row_supports();
    std::vector<std::vector<std::size_t>> triples;
    std::optional<RowSpace> z_space;

    Connected out;
    out.plan.original_qubits = code.n();
    std::size_t n = code.n();
    for (std::size_t s = 0; s < code.hz().rows(); ++s) {
        const auto comps = support_components(x_of, code.hz().row(s));
        if (comps.size() <= 1) continue;
        if (!z_space) z_space.emplace(code.hz());
        const bool needed = std::any_of(comps.begin(), comps.end(), [&](const auto &comp) {
            return !z_space->contains(BitVector(code.n(), comp));
        });
        if (!needed) continue;
        ConnectPlan::Entry entry;
        entry.stabilizer = s;
        // A qubit under no X-stabilizer is a component of its own. Left
        // inside the chain it would stay in the rewritten stabilizer with
        // nothing to connect it, so such qubits are merged pairwise into one
        // X-free connecting qubit, which then sits at the open end.
        std::vector<std::size_t> reps;
        std::optional<std::size_t> free_rep;
        const std::vector<std::size_t> none;
        auto x_at = [&](std::size_t q) -> const std::vector<std::size_t> & { return q < x_of.size() ? x_of[q] : none; };
        auto link = [&](std::size_t q_prev, std::size_t q_next) {
            const auto r = n++;
            entry.representatives.emplace_back(q_prev, q_next);
            entry.connecting_qubits.push_back(r);
            for (auto x : symmetric_difference(x_at(q_prev), x_at(q_next))) x_rows[x].push_back(r);
            std::vector<std::size_t> triple{q_prev, q_next, r};
            std::sort(triple.begin(), triple.end());
            entry.added_stabilizers.push_back(code.hz().rows() + triples.size());
            z_rows[s] = symmetric_difference(z_rows[s], triple);
            triples.push_back(std::move(triple));
            return r;
        };
        for (const auto &comp : comps) {
            const auto q = comp.front();
            if (!x_of[q].empty()) {
                reps.push_back(q);
            } else {
                free_rep = free_rep ? link(*free_rep, q) : q;
            }
        }
        if (free_rep) reps.insert(reps.begin(), *free_rep);
        for (std::size_t a = 0; a + 1 < reps.size(); ++a) link(reps[a], reps[a + 1]);
        out.plan.entries.push_back(std::move(entry));
    }
    z_rows.insert(z_rows.end(), triples.begin(), triples.end());
    const auto nx = x_rows.size();
    const auto nz = z_rows.size();
    out.code = CssCode(n, SparseBitMatrix(nx, n, std::move(x_rows)), SparseBitMatrix(nz, n, std::move(z_rows)),
                       code.meta());

    auto &report = out.report;
    report.step = "connect";
    report.params_before = before;
    report.params_after = validate(out.code);
    report.check_equal("K' = K", static_cast<double>(report.params_after.k), static_cast<double>(before.k));
    report.check_equal("N' = N + sum (k - 1)", static_cast<double>(report.params_after.n),
                       static_cast<double>(code.n() + triples.size()));
    const auto new_x_of = out.code.hx().column_supports();
    std::size_t connected = 0;
    for (const auto &entry : out.plan.entries) {
        if (support_components(new_x_of, out.code.hz().row(entry.stabilizer)).size() == 1) ++connected;
    }
    report.check_equal("rewritten stabilizers with connected G_Q", static_cast<double>(connected),
                       static_cast<double>(out.plan.entries.size()));
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &e : out.plan.entries) {
        entries.push_back({{"stabilizer", e.stabilizer},
                           {"representatives", e.representatives},
                           {"connecting_qubits", e.connecting_qubits},
                           {"added_stabilizers", e.added_stabilizers}});
    }
    report.details = {{"connected_stabilizers", entries}, {"connecting_qubits", triples.size()}};
    return out;
}

namespace {

struct Expansion {
    double value = 0;
    std::optional<Rational> exact;
};

Expansion component_expansion(const Graph &g, const std::vector<std::size_t> &members, std::size_t threshold) {
    if (members.size() <= threshold) {
        auto r = cheeger_component_exact(g, members);
        return {r.to_double(), r};
    }
    return {cheeger_component_spectral_bound(g, members), std::nullopt};
}

bool meets(const Expansion &e, const Rational &target) {
    return e.exact ? *e.exact >= target : e.value >= target.to_double();
}

}  // namespace

AugmentedGraph augment_graph(const Graph &g, Rational target_h, std::uint64_t seed, const AugmentOptions &options) {
    AugmentedGraph out;
    out.graph = g;
    std::vector<std::size_t> increase(g.vertex_count(), 0);
    const auto components = g.components();
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
        const auto &comp = components[ci];
        if (comp.size() < 2) continue;
        auto current = component_expansion(out.graph, comp, options.exhaustive_threshold);
        std::size_t round = 0;
        while (!meets(current, target_h)) {
            if (round == options.max_rounds) {
                throw DomainError(errors::kAugmentationFailed, "expansion target not reached within the round cap",
                                  {{"component", ci},
                                   {"best_h", current.exact ? current.exact->to_string() : std::to_string(current.value)},
                                   {"target_h", target_h.to_string()},
                                   {"rounds", round}});
            }
            const auto round_seed = derive_seed(derive_seed(seed, static_cast<std::uint64_t>(ci)), static_cast<std::uint64_t>(round));
            std::optional<Expansion> best;
            std::vector<std::pair<std::size_t, std::size_t>> best_pairs;
            for (std::size_t c = 0; c < std::max<std::size_t>(options.candidates, 1); ++c) {
                Rng rng(derive_seed(round_seed, static_cast<std::uint64_t>(c)));
                auto order = comp;
                rng.shuffle(order);
                std::vector<std::pair<std::size_t, std::size_t>> pairs;
                Graph candidate = out.graph;
                for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
                    pairs.emplace_back(std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1]));
                    candidate.add_edge(pairs.back().first, pairs.back().second);
                }
                auto e = component_expansion(candidate, comp, options.exhaustive_threshold);
                if (!best || e.value > best->value) {
                    best = e;
                    best_pairs = std::move(pairs);
                }
            }
            for (auto [a, b] : best_pairs) {
                out.graph.add_edge(a, b);
                out.added.emplace_back(a, b);
                ++increase[a];
                ++increase[b];
            }
            current = *best;
            ++round;
        }
        out.rounds = std::max(out.rounds, round);
        const auto value = current.exact ? *current.exact : Rational::of(0, 1);
        if (!current.exact) out.exact = false;
        if (current.exact && value < out.achieved) out.achieved = value;
    }
    for (auto d : increase) out.max_degree_increase = std::max(out.max_degree_increase, d);
    return out;
}

BComplex augment_b_complex(const BComplex &b, const std::vector<std::pair<std::size_t, std::size_t>> &added,
                           bool with_redundancies) {
    BComplex out = b;
    for (auto [u, v] : added) {
        if (u == v || std::max(u, v) >= b.qubits.size()) {
            throw DomainError(errors::kInvalidArgument, "augmentation edge must join two distinct vertices",
                              {{"edge", {u, v}}});
        }
        out.tuples.push_back({BComplex::kNoStabilizer, std::min(u, v), std::max(u, v)});
    }
    out.relations.clear();
    if (with_redundancies) out.relations = cycle_basis(out.graph());
    return out;
}

SoundnessImprovement improve_soundness(const CssCode &code, const std::vector<std::vector<std::size_t>> &q_sets,
                                       Rational target_h, std::uint64_t seed, const AugmentOptions &options) {
    const auto verdict = is_reasonable(code);
    if (!verdict.reasonable) {
        throw DomainError(errors::kNotReasonable, "improve soundness needs a reasonable code; connect it first",
                          {{"z_stabilizer", *verdict.stabilizer}});
    }
    SoundnessImprovement out;
    const auto base = build_b_complexes(code, q_sets, false);
    out.complexes.resize(base.size());
    out.graphs.resize(base.size());
    parallel_for(base.size(), [&](std::size_t i) {
        out.graphs[i] = augment_graph(base[i].graph(), target_h, derive_seed(seed, static_cast<std::uint64_t>(i)), options);
        out.complexes[i] = augment_b_complex(base[i], out.graphs[i].added);
    });

    auto &report = out.report;
    report.step = "improve-soundness";
    report.seed = seed;
    report.config = {{"target_h", target_h.to_string()},
                     {"max_rounds", options.max_rounds},
                     {"candidates", options.candidates}};
    report.params_before = params_of(code);
    report.params_after = report.params_before;
    nlohmann::json graphs = nlohmann::json::array();
    std::size_t preserved = 0, worst_increase = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto &a = out.graphs[i];
        if (a.graph.components() == base[i].graph().components()) ++preserved;
        worst_increase = std::max(worst_increase, a.max_degree_increase);
        nlohmann::json entry = {{"vertices", a.graph.vertex_count()},
                                {"added_edges", a.added.size()},
                                {"max_degree_increase", a.max_degree_increase},
                                {"rounds", a.rounds},
                                {"achieved_h", a.achieved.to_string()},
                                {"exact", a.exact}};
        const auto &b = out.complexes[i];
        if (b.qubits.size() <= 16 && !b.tuples.empty()) {
            const auto lambda = soundness(b.d1(), b.d0(), {}, 16);
            entry["soundness"] = lambda.to_string();
            report.check_at_least("lambda_" + std::to_string(i) + " >= target_h", lambda.to_double(), target_h.to_double());
        }
        graphs.push_back(std::move(entry));
    }
    report.check_equal("augmentations preserving every component", static_cast<double>(preserved),
                       static_cast<double>(base.size()));
    report.check_at_most("max vertex degree increase", static_cast<double>(worst_increase),
                         static_cast<double>(worst_increase), true);
    report.details = {{"graphs", graphs}};
    return out;
}

}  // namespace qwr
