#include "qwr/thicken.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwr/error.hpp"
#include "qwr/rng.hpp"

namespace qwr {

IntervalComplex IntervalComplex::of(std::size_t ell) {
    if (ell < 1) throw DomainError(errors::kInvalidArgument, "interval needs at least one 0-cell");
    std::vector<std::vector<std::size_t>> rows(ell);
    for (std::size_t e = 0; e + 1 < ell; ++e) {
        rows[e].push_back(e);
        rows[e + 1].push_back(e);
    }
    return {ell, SparseBitMatrix(ell, ell - 1, std::move(rows))};
}

Thickening thicken(const CssCode &code, std::size_t ell, const HeightAssignment &heights) {
    if (ell < 2) throw DomainError(errors::kInvalidArgument, "thickening needs ell >= 2", {{"ell", ell}});
    if (heights.size() != code.hz().rows()) {
        throw DomainError(errors::kDimensionMismatch, "one height per Z-stabilizer is required",
                          {{"heights", heights.size()}, {"z_stabilizers", code.hz().rows()}});
    }
    for (std::size_t z = 0; z < heights.size(); ++z) {
        if (heights[z] >= ell) {
            throw DomainError(errors::kHeightOutOfRange, "height outside the interval",
                              {{"z_stabilizer", z}, {"height", heights[z]}, {"ell", ell}});
        }
    }
    const auto before = validate(code);
    ThickenLayout L{code.n(), code.hx().rows(), code.hz().rows(), ell};
    const std::size_t n_out = L.n * ell + L.n_x * (ell - 1);

    std::vector<std::vector<std::size_t>> x_rows(L.n_x * ell);
    for (std::size_t m = 0; m < ell; ++m) {
        for (std::size_t x = 0; x < L.n_x; ++x) {
            auto &row = x_rows[L.x_stabilizer(x, m)];
            for (auto q : code.hx().row(x)) row.push_back(L.qubit(q, m));
            if (m > 0) row.push_back(L.vertical_qubit(x, m - 1));
            if (m + 1 < ell) row.push_back(L.vertical_qubit(x, m));
        }
    }
    const auto x_of_qubit = code.hx().column_supports();
    std::vector<std::vector<std::size_t>> z_rows(L.n_z + (ell - 1) * L.n);
    for (std::size_t z = 0; z < L.n_z; ++z) {
        for (auto q : code.hz().row(z)) z_rows[L.kept_stabilizer(z)].push_back(L.qubit(q, heights[z]));
    }
    for (std::size_t e = 0; e + 1 < ell; ++e) {
        for (std::size_t q = 0; q < L.n; ++q) {
            auto &row = z_rows[L.cross_stabilizer(q, e)];
            row.push_back(L.qubit(q, e));
            row.push_back(L.qubit(q, e + 1));
            for (auto x : x_of_qubit[q]) row.push_back(L.vertical_qubit(x, e));
        }
    }
    const auto nx = x_rows.size();
    const auto nz = z_rows.size();
    CssCode out(n_out, SparseBitMatrix(nx, n_out, std::move(x_rows)), SparseBitMatrix(nz, n_out, std::move(z_rows)),
                code.meta());
    const auto after = validate(out);
    const auto mult = height_multiplicity(code, heights);

    TransformReport report;
    report.step = "thicken";
    report.config = {{"ell", ell}};
    report.params_before = before;
    report.params_after = after;
    report.check_equal("K~ = K", static_cast<double>(after.k), static_cast<double>(before.k));
    report.check_equal("N~ = N ell + n_X (ell - 1)", static_cast<double>(after.n), static_cast<double>(n_out));
    report.check_equal("n~_X = ell n_X", static_cast<double>(after.n_x), static_cast<double>(ell * L.n_x));
    report.check_equal("n~_Z = n_Z + (ell - 1) N", static_cast<double>(after.n_z),
                       static_cast<double>(L.n_z + (ell - 1) * L.n));
    if (L.n_x > 0) {
        report.check_equal(ell >= 3 ? "w~_X = w_X + 2" : "w~_X = w_X + 1", static_cast<double>(after.w_x),
                           static_cast<double>(before.w_x + (ell >= 3 ? 2 : 1)));
        report.check_equal("q~_X = max(q_X, 2)", static_cast<double>(after.q_x),
                           static_cast<double>(std::max<std::size_t>(before.q_x, 2)));
    }
    if (L.n > 0) {
        report.check_equal("w~_Z = max(w_Z, 2 + q_X)", static_cast<double>(after.w_z),
                           static_cast<double>(std::max(before.w_z, 2 + before.q_x)));
    }
    report.check_at_most("q~_Z <= max(w + 2, w_X) with w the achieved multiplicity", static_cast<double>(after.q_z),
                         static_cast<double>(std::max(mult + 2, before.w_x)));
    report.details = {{"heights", heights}, {"multiplicity", mult}};
    return {std::move(out), L, std::move(report)};
}

std::size_t height_multiplicity(const CssCode &code, const HeightAssignment &heights) {
    std::size_t worst = 0;
    const auto z_of_qubit = code.hz().column_supports();
    std::vector<std::size_t> count;
    for (const auto &zs : z_of_qubit) {
        count.clear();
        for (auto z : zs) {
            if (heights[z] >= count.size()) count.resize(heights[z] + 1, 0);
            worst = std::max(worst, ++count[heights[z]]);
        }
    }
    return worst;
}

namespace {

// Qubit whose same-height multiplicity exceeds w, if any.
std::optional<std::size_t> offending_qubit(const std::vector<std::vector<std::size_t>> &z_of_qubit,
                                           const HeightAssignment &heights, std::size_t ell, std::size_t w) {
    std::vector<std::size_t> count(ell, 0);
    for (std::size_t q = 0; q < z_of_qubit.size(); ++q) {
        std::fill(count.begin(), count.end(), 0);
        for (auto z : z_of_qubit[q]) {
            if (++count[heights[z]] > w) return q;
        }
    }
    return std::nullopt;
}

}  // namespace

std::size_t local_lemma_ell(const CssCode &code, std::size_t w) {
    const auto p = params_of(code);
    if (p.q_z <= w) return 1;
    double binom = 1;
    for (std::size_t i = 0; i < w + 1; ++i) {
        binom = binom * static_cast<double>(p.q_z - i) / static_cast<double>(i + 1);
    }
    const double spread = static_cast<double>(std::min(p.q_z * p.w_z, p.n));
    const double factor = 2 * std::numbers::e * binom * spread;
    // factor * ell^{-w} <= 1  <=>  ell >= factor^{1/w}
    auto ell = static_cast<std::size_t>(std::ceil(std::pow(factor, 1.0 / static_cast<double>(w))));
    while (ell > 1 && factor * std::pow(static_cast<double>(ell - 1), -static_cast<double>(w)) <= 1) --ell;
    while (factor * std::pow(static_cast<double>(ell), -static_cast<double>(w)) > 1) ++ell;
    return std::max<std::size_t>(ell, 1);
}

HeightChoice choose_heights_random(const CssCode &code, std::size_t ell, std::size_t w, std::uint64_t seed,
                                   std::size_t max_retries) {
    if (ell < 1 || w < 1) {
        throw DomainError(errors::kInvalidArgument, "height search needs ell >= 1 and w >= 1", {{"ell", ell}, {"w", w}});
    }
    const auto z_of_qubit = code.hz().column_supports();
    HeightAssignment heights(code.hz().rows(), 0);
    std::optional<std::size_t> bad;
    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(max_retries, 1); ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        for (auto &h : heights) h = static_cast<std::size_t>(rng.below(ell));
        bad = offending_qubit(z_of_qubit, heights, ell, w);
        if (!bad) return {ell, heights, attempt + 1, height_multiplicity(code, heights)};
    }
    throw DomainError(errors::kRetriesExhausted, "no height assignment found within the retry cap",
                      {{"ell", ell},
                       {"w", w},
                       {"retries", max_retries},
                       {"offending_qubit", *bad},
                       {"suggested_ell", local_lemma_ell(code, w)}});
}

HeightChoice choose_heights_coloring(const CssCode &code) {
    const auto p = params_of(code);
    const std::size_t ell = std::max<std::size_t>(2, p.q_z * p.w_z + 1);
    const auto z_of_qubit = code.hz().column_supports();
    HeightAssignment heights(code.hz().rows(), 0);
    std::vector<char> used;
    for (std::size_t z = 0; z < code.hz().rows(); ++z) {
        used.assign(ell, 0);
        for (auto q : code.hz().row(z)) {
            for (auto other : z_of_qubit[q]) {
                if (other < z) used[heights[other]] = 1;
            }
        }
        std::size_t color = 0;
        while (used[color]) ++color;
        heights[z] = color;
    }
    return {ell, heights, 1, height_multiplicity(code, heights)};
}

CssCode dual(const CssCode &code) { return code.dual(); }

}  // namespace qwr
