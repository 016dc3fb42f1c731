#include "qwr/code.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "qwr/error.hpp"

namespace qwr {

std::string to_string(PauliKind k) { return k == PauliKind::X ? "x" : "z"; }

std::string to_string(DistanceMethod m) {
    switch (m) {
        case DistanceMethod::Exact:
            return "exact";
        case DistanceMethod::LowerBound:
            return "lower-bound";
        case DistanceMethod::Estimate:
            return "estimate";
    }
    return "unknown";
}

CssCode::CssCode(std::size_t n_qubits, SparseBitMatrix hx, SparseBitMatrix hz, nlohmann::json meta)
    : n_(n_qubits), hx_(std::move(hx)), hz_(std::move(hz)), meta_(std::move(meta)) {
    if (hx_.cols() != n_ || hz_.cols() != n_) {
        throw DomainError(errors::kDimensionMismatch, "stabilizer matrices must have one column per qubit",
                          {{"n", n_}, {"hx_cols", hx_.cols()}, {"hz_cols", hz_.cols()}});
    }
}

bool CssCode::commutes() const { return mat_mul(hx_, hz_.transpose()).is_zero(); }

CssCode CssCode::dual() const { return CssCode(n_, hz_, hx_, meta_); }

CodeParams params_of(const CssCode &code) {
    CodeParams p;
    p.n = code.n();
    p.n_x = code.hx().rows();
    p.n_z = code.hz().rows();
    p.w_x = code.hx().max_row_weight();
    p.w_z = code.hz().max_row_weight();
    p.q_x = code.hx().max_col_weight();
    p.q_z = code.hz().max_col_weight();
    p.k = code.n() - rank(code.hx()) - rank(code.hz());
    return p;
}

std::size_t logical_count(const CssCode &code) { return code.n() - rank(code.hx()) - rank(code.hz()); }

CodeParams validate(const CssCode &code) {
    auto product = mat_mul(code.hx(), code.hz().transpose());
    for (std::size_t r = 0; r < product.rows(); ++r) {
        if (!product.row(r).empty()) {
            auto z = product.row(r).front();
            throw DomainError(errors::kCommutationViolation, "X- and Z-stabilizers anticommute",
                              {{"x_stabilizer", r},
                               {"z_stabilizer", z},
                               {"x_support", code.hx().row_supports()[r]},
                               {"z_support", code.hz().row_supports()[z]}});
        }
    }
    return params_of(code);
}

std::vector<std::vector<std::size_t>> SupportGraph::left_components() const {
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < left.size(); ++i) slot[left[i]] = i;
    std::vector<std::size_t> parent(left.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<std::size_t, std::size_t> first_of_right;
    for (auto [q, x] : edges) {
        auto s = slot.at(q);
        auto [it, inserted] = first_of_right.emplace(x, s);
        if (!inserted) parent[find(s)] = find(it->second);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < left.size(); ++i) groups[find(i)].push_back(left[i]);
    std::vector<std::vector<std::size_t>> out;
    for (auto &[root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

SupportGraph support_graph(const CssCode &code, const std::vector<std::size_t> &q_set) {
    SupportGraph g;
    g.left = q_set;
    std::sort(g.left.begin(), g.left.end());
    g.left.erase(std::unique(g.left.begin(), g.left.end()), g.left.end());
    if (!g.left.empty() && g.left.back() >= code.n()) {
        throw DomainError(errors::kIndexOutOfRange, "qubit index out of range",
                          {{"index", g.left.back()}, {"n", code.n()}});
    }
    auto x_of = code.hx().column_supports();
    std::set<std::size_t> right;
    for (auto q : g.left) {
        for (auto x : x_of[q]) {
            g.edges.emplace_back(q, x);
            right.insert(x);
        }
    }
    g.right.assign(right.begin(), right.end());
    return g;
}

std::vector<std::vector<std::size_t>> support_components(const std::vector<std::vector<std::size_t>> &x_of_qubit,
                                                         std::span<const std::size_t> q_set) {
    std::vector<std::size_t> parent(q_set.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<std::size_t, std::size_t> first_of_right;
    for (std::size_t i = 0; i < q_set.size(); ++i) {
        for (auto x : x_of_qubit[q_set[i]]) {
            auto [it, inserted] = first_of_right.emplace(x, i);
            if (!inserted) parent[find(i)] = find(it->second);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < q_set.size(); ++i) groups[find(i)].push_back(q_set[i]);
    std::vector<std::vector<std::size_t>> out;
    for (auto &[root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Reasonableness is_reasonable(const CssCode &code) {
    auto x_of = code.hx().column_supports();
    std::optional<RowSpace> z_space;
    for (std::size_t s = 0; s < code.hz().rows(); ++s) {
        auto comps = support_components(x_of, code.hz().row(s));
        if (comps.size() <= 1) continue;
        if (!z_space) z_space.emplace(code.hz());
        for (auto &comp : comps) {
            if (!z_space->contains(BitVector(code.n(), comp))) {
                return {false, s, comp};
            }
        }
    }
    return {};
}

bool is_connected(const CssCode &code) {
    auto x_of = code.hx().column_supports();
    for (std::size_t s = 0; s < code.hz().rows(); ++s) {
        if (support_components(x_of, code.hz().row(s)).size() > 1) return false;
    }
    return true;
}

CssCode make_connected(const CssCode &code) {
    auto verdict = is_reasonable(code);
    if (!verdict.reasonable) {
        throw DomainError(errors::kNotReasonable, "code is not reasonable",
                          {{"z_stabilizer", *verdict.stabilizer}, {"component", verdict.component}});
    }
    auto x_of = code.hx().column_supports();
    std::vector<std::vector<std::size_t>> rows;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t s = 0; s < code.hz().rows(); ++s) {
        auto row = code.hz().row(s);
        for (auto &comp : support_components(x_of, row)) {
            if (seen.insert(comp).second) rows.push_back(std::move(comp));
        }
        if (row.empty() && seen.insert(std::vector<std::size_t>{}).second) rows.emplace_back();
    }
    const auto count = rows.size();
    SparseBitMatrix hz(count, code.n(), std::move(rows));
    return CssCode(code.n(), code.hx(), std::move(hz), code.meta());
}

}  // namespace qwr
