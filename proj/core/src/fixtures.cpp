#include "qwr/fixtures.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "qwr/error.hpp"

namespace qwr::fixtures {

namespace {

SparseBitMatrix rows_to_matrix(std::size_t cols, std::vector<std::vector<std::size_t>> rows) {
    const auto count = rows.size();
    return SparseBitMatrix(count, cols, std::move(rows));
}

}  // namespace

CssCode toric(std::size_t L) {
    if (L < 2) throw DomainError(errors::kInvalidArgument, "toric code needs L >= 2", {{"L", L}});
    auto h = [L](std::size_t x, std::size_t y) { return (y % L) * L + (x % L); };
    auto v = [L](std::size_t x, std::size_t y) { return L * L + (y % L) * L + (x % L); };
    std::vector<std::vector<std::size_t>> x_rows;
    std::vector<std::vector<std::size_t>> z_rows;
    for (std::size_t y = 0; y < L; ++y) {
        for (std::size_t x = 0; x < L; ++x) {
            x_rows.push_back({h(x, y), h(x + L - 1, y), v(x, y), v(x, y + L - 1)});
            z_rows.push_back({h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)});
        }
    }
    const std::size_t n = 2 * L * L;
    return CssCode(n, rows_to_matrix(n, std::move(x_rows)), rows_to_matrix(n, std::move(z_rows)),
                   {{"family", "toric"}, {"L", L}});
}

CssCode steane() {
    std::vector<std::vector<std::size_t>> rows = {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};
    return CssCode(7, rows_to_matrix(7, rows), rows_to_matrix(7, rows), {{"family", "steane"}});
}

CssCode fig1(std::size_t n, std::size_t L) {
    if (n < 4 || n % 2 != 0) {
        throw DomainError(errors::kInvalidArgument, "fig1 polygon size must be even and at least 4", {{"n", n}});
    }
    const std::size_t merged = (n - 2) / 2;
    if (L == 0) L = std::max<std::size_t>(4, merged + 2);
    if (L < merged + 1 || L < 3) {
        throw DomainError(errors::kInvalidArgument, "torus too small for the polygon", {{"n", n}, {"L", L}});
    }
    auto base = toric(L);
    // Faces (0,0)..(merged-1,0) are merged by deleting the vertical edges
    // between them.
    std::vector<bool> removed(base.n(), false);
    for (std::size_t x = 1; x < merged; ++x) removed[L * L + x] = true;
    std::vector<std::size_t> renumber(base.n(), SIZE_MAX);
    std::size_t n_new = 0;
    for (std::size_t q = 0; q < base.n(); ++q) {
        if (!removed[q]) renumber[q] = n_new++;
    }
    auto restrict_row = [&](std::span<const std::size_t> row) {
        std::vector<std::size_t> out;
        for (auto q : row) {
            if (!removed[q]) out.push_back(renumber[q]);
        }
        return out;
    };
    std::vector<std::vector<std::size_t>> x_rows;
    for (std::size_t r = 0; r < base.hx().rows(); ++r) x_rows.push_back(restrict_row(base.hx().row(r)));
    std::vector<std::vector<std::size_t>> z_rows;
    std::vector<std::size_t> polygon;
    for (std::size_t r = 0; r < base.hz().rows(); ++r) {
        if (r < merged) {
            for (auto q : base.hz().row(r)) {
                if (!removed[q]) polygon.push_back(q);
            }
            if (r + 1 == merged) {
                std::sort(polygon.begin(), polygon.end());
                polygon.erase(std::unique(polygon.begin(), polygon.end()), polygon.end());
                std::vector<std::size_t> row;
                for (auto q : polygon) row.push_back(renumber[q]);
                z_rows.push_back(std::move(row));
            }
            continue;
        }
        z_rows.push_back(restrict_row(base.hz().row(r)));
    }
    return CssCode(n_new, rows_to_matrix(n_new, std::move(x_rows)), rows_to_matrix(n_new, std::move(z_rows)),
                   {{"family", "fig1"}, {"n", n}, {"L", L}, {"polygon_face", 0}});
}

CssCode punctured_sphere(std::size_t L, bool joint_stabilizer) {
    if (L < 2) throw DomainError(errors::kInvalidArgument, "punctured sphere needs L >= 2", {{"L", L}});
    auto on_boundary = [L](std::size_t x, std::size_t y) { return x == 0 || y == 0 || x == L || y == L; };
    auto vertex = [&](int side, std::size_t x, std::size_t y) -> std::size_t {
        if (side == 0 || on_boundary(x, y)) return y * (L + 1) + x;
        return (L + 1) * (L + 1) + (y - 1) * (L - 1) + (x - 1);
    };
    const std::size_t n_vertices = (L + 1) * (L + 1) + (L - 1) * (L - 1);
    // Edge key: (side, horizontal?, x, y); boundary edges belong to side 0.
    std::map<std::tuple<int, int, std::size_t, std::size_t>, std::size_t> edge_ids;
    std::vector<std::vector<std::size_t>> x_rows(n_vertices);
    auto edge = [&](int side, bool horizontal, std::size_t x, std::size_t y) {
        const bool boundary = horizontal ? (y == 0 || y == L) : (x == 0 || x == L);
        auto key = std::make_tuple(boundary ? 0 : side, horizontal ? 1 : 0, x, y);
        auto [it, inserted] = edge_ids.emplace(key, edge_ids.size());
        if (inserted) {
            const int s = std::get<0>(key);
            x_rows[vertex(s, x, y)].push_back(it->second);
            x_rows[horizontal ? vertex(s, x + 1, y) : vertex(s, x, y + 1)].push_back(it->second);
        }
        return it->second;
    };
    std::vector<std::vector<std::size_t>> faces;
    for (int side = 0; side < 2; ++side) {
        for (std::size_t y = 0; y < L; ++y) {
            for (std::size_t x = 0; x < L; ++x) {
                faces.push_back({edge(side, true, x, y), edge(side, true, x, y + 1), edge(side, false, x, y),
                                 edge(side, false, x + 1, y)});
            }
        }
    }
    const std::size_t front_puncture = 0;
    const std::size_t back_puncture = L * L + (L - 1) * L + (L - 1);
    std::vector<std::vector<std::size_t>> z_rows;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (f != front_puncture && f != back_puncture) z_rows.push_back(faces[f]);
    }
    if (joint_stabilizer) {
        auto joint = faces[front_puncture];
        joint.insert(joint.end(), faces[back_puncture].begin(), faces[back_puncture].end());
        z_rows.push_back(std::move(joint));
    }
    const std::size_t n = edge_ids.size();
    return CssCode(n, rows_to_matrix(n, std::move(x_rows)), rows_to_matrix(n, std::move(z_rows)),
                   {{"family", "punctured-sphere"}, {"L", L}, {"joint_stabilizer", joint_stabilizer}});
}

CssCode by_name(const std::string &name, std::size_t size, bool joint_stabilizer) {
    if (name == "toric") return toric(size == 0 ? 3 : size);
    if (name == "steane") return steane();
    if (name == "fig1") return fig1(size == 0 ? 6 : size);
    if (name == "punctured-sphere") return punctured_sphere(size == 0 ? 3 : size, joint_stabilizer);
    throw DomainError(errors::kInvalidArgument, "unknown fixture", {{"name", name}});
}

}  // namespace qwr::fixtures
