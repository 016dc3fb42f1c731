#include "qwr/copy_gauge.hpp"

#include <algorithm>

#include "qwr/error.hpp"

namespace qwr {

XReduction x_reduce(const CssCode &code) {
    const auto before = validate(code);
    const std::size_t n = code.n();
    const std::size_t copies = std::max<std::size_t>(1, before.q_x);

    XReductionPlan plan;
    plan.original_qubits = n;
    plan.copies = copies;
    std::vector<std::size_t> next_copy(n, 0);
    std::size_t new_qubits = 0;
    std::size_t copied_stabilizers = 0;
    // Position of each (kept stabilizer, qubit) pair, for the Z rebuild.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> positions_of_qubit(n);
    for (std::size_t s = 0; s < code.hx().rows(); ++s) {
        auto row = code.hx().row(s);
        if (row.empty()) continue;
        const std::size_t i = plan.kept_stabilizers.size();
        plan.kept_stabilizers.push_back(s);
        plan.qubit_order.emplace_back(row.begin(), row.end());
        std::vector<std::size_t> js;
        for (std::size_t k = 0; k < row.size(); ++k) {
            js.push_back(next_copy[row[k]]++);
            positions_of_qubit[row[k]].emplace_back(i, k);
        }
        plan.assignment.push_back(std::move(js));
        plan.new_qubit_offset.push_back(n * copies + new_qubits);
        plan.stabilizer_offset.push_back(copied_stabilizers);
        new_qubits += row.size() - 1;
        copied_stabilizers += row.size();
    }
    const std::size_t n_out = n * copies + new_qubits;

    std::vector<std::vector<std::size_t>> x_rows;
    x_rows.reserve(copied_stabilizers + n * (copies - 1));
    for (std::size_t i = 0; i < plan.kept_stabilizers.size(); ++i) {
        const auto d = plan.qubit_order[i].size();
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<std::size_t> row;
            if (k > 0) row.push_back(plan.new_qubit(i, k - 1));
            if (k + 1 < d) row.push_back(plan.new_qubit(i, k));
            row.push_back(plan.copied_qubit(plan.qubit_order[i][k], plan.assignment[i][k]));
            x_rows.push_back(std::move(row));
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t j = 0; j + 1 < copies; ++j) {
            x_rows.push_back({plan.copied_qubit(q, j), plan.copied_qubit(q, j + 1)});
        }
    }

    std::vector<std::vector<std::size_t>> z_rows;
    z_rows.reserve(code.hz().rows());
    for (std::size_t r = 0; r < code.hz().rows(); ++r) {
        std::vector<std::size_t> row;
        // Crossing positions per kept stabilizer, in order of first touch.
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> crossings;
        for (auto q : code.hz().row(r)) {
            for (std::size_t j = 0; j < copies; ++j) row.push_back(plan.copied_qubit(q, j));
            for (auto [i, k] : positions_of_qubit[q]) {
                auto it = std::find_if(crossings.begin(), crossings.end(), [i = i](const auto &c) { return c.first == i; });
                if (it == crossings.end()) {
                    crossings.push_back({i, {k}});
                } else {
                    it->second.push_back(k);
                }
            }
        }
        for (auto &[i, ks] : crossings) {
            if (ks.size() % 2 != 0) {
                throw DomainError(errors::kCommutationViolation, "Z-stabilizer crosses an X-stabilizer oddly",
                                  {{"z_stabilizer", r}, {"x_stabilizer", plan.kept_stabilizers[i]}});
            }
            std::sort(ks.begin(), ks.end());
            for (std::size_t a = 0; a < ks.size(); a += 2) {
                for (std::size_t k = ks[a]; k < ks[a + 1]; ++k) row.push_back(plan.new_qubit(i, k));
            }
        }
        z_rows.push_back(std::move(row));
    }

    const auto nx = x_rows.size();
    const auto nz = z_rows.size();
    CssCode out(n_out, SparseBitMatrix(nx, n_out, std::move(x_rows)), SparseBitMatrix(nz, n_out, std::move(z_rows)),
                code.meta());
    const auto after = validate(out);

    TransformReport report;
    report.step = "copy-gauge";
    report.config = {{"copies", copies}};
    report.params_before = before;
    report.params_after = after;
    const double wx = static_cast<double>(before.w_x);
    const double qx = static_cast<double>(before.q_x);
    const double qz = static_cast<double>(before.q_z);
    const double wz = static_cast<double>(before.w_z);
    report.check_equal("K~ = K", static_cast<double>(after.k), static_cast<double>(before.k));
    report.check_equal("N~ = N q_X + sum_s (d_s - 1)", static_cast<double>(after.n),
                       static_cast<double>(n * copies + new_qubits));
    report.check_at_most("w~_X <= 3", static_cast<double>(after.w_x), 3);
    report.check_at_most("q~_X <= 3", static_cast<double>(after.q_x), 3);
    report.check_at_most("q~_Z <= max(q_Z, w_X q_Z)", static_cast<double>(after.q_z), std::max(qz, wx * qz));
    report.check_at_most("w~_Z <= w_Z q_X (1 + w_X)", static_cast<double>(after.w_z), wz * qx * (1 + wx));
    report.check_at_most("w~_Z <= q_Z q_X (1 + w_X) [lemma statement]", static_cast<double>(after.w_z),
                         qz * qx * (1 + wx), true);
    report.details = {{"new_qubits", new_qubits}, {"copied_stabilizers", copied_stabilizers},
                      {"dropped_empty_x_rows", code.hx().rows() - plan.kept_stabilizers.size()}};
    return {std::move(out), std::move(plan), std::move(report)};
}

}  // namespace qwr
