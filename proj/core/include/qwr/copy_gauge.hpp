#pragma once

#include <cstddef>
#include <vector>

#include "qwr/code.hpp"
#include "qwr/report.hpp"

namespace qwr {

/// Bookkeeping of the copying-and-gauging transform. Copied qubit (q, j) for
/// j in [0, copies) has index q * copies + j; new qubit [s, k] (between
/// positions k and k+1 of stabilizer s, k in [0, d_s - 1)) follows all
/// copies. X-stabilizers list the copied (s, k) first, then the repetition
/// checks [q, j] = X(q,j) X(q,j+1).
struct XReductionPlan {
    std::size_t original_qubits = 0;
    std::size_t copies = 0;
    /// Original X-stabilizer rows that were kept (empty rows are dropped).
    std::vector<std::size_t> kept_stabilizers;
    /// qubit_order[i] = q_1 < ... < q_{d_s} of kept stabilizer i.
    std::vector<std::vector<std::size_t>> qubit_order;
    /// assignment[i][k] = copy index j_{s,k} used at position k.
    std::vector<std::vector<std::size_t>> assignment;
    /// First new-qubit index of each kept stabilizer.
    std::vector<std::size_t> new_qubit_offset;
    /// First copied-stabilizer index of each kept stabilizer.
    std::vector<std::size_t> stabilizer_offset;

    std::size_t copied_qubit(std::size_t q, std::size_t j) const { return q * copies + j; }
    std::size_t new_qubit(std::size_t i, std::size_t k) const { return new_qubit_offset[i] + k; }
};

struct XReduction {
    CssCode code;
    XReductionPlan plan;
    TransformReport report;
};

/// Copies every qubit q_X times and gauges every X-stabilizer into a chain
/// of weight <= 3 stabilizers, rebuilding each Z-stabilizer as the product
/// of all copies of its qubits times the string corrections G_s.
XReduction x_reduce(const CssCode &code);

}  // namespace qwr
