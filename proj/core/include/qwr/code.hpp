#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwr/f2.hpp"

namespace qwr {

enum class PauliKind { X, Z };

inline PauliKind opposite(PauliKind k) { return k == PauliKind::X ? PauliKind::Z : PauliKind::X; }
std::string to_string(PauliKind k);

/// A CSS code viewed as the complex A2 -> A1 -> A0 (Z-stabilizers, qubits,
/// X-stabilizers). `hx` is the (X-stabilizer x qubit) matrix, i.e. the first
/// boundary map; `hz` is the (Z-stabilizer x qubit) matrix, the transpose of
/// the second. Stabilizer rows are generators: dependent rows are kept.
class CssCode {
   public:
    CssCode() = default;
    /// Checks column counts; commutation is checked by validate().
    CssCode(std::size_t n_qubits, SparseBitMatrix hx, SparseBitMatrix hz,
            nlohmann::json meta = nlohmann::json::object());

    std::size_t n() const noexcept { return n_; }
    const SparseBitMatrix &hx() const noexcept { return hx_; }
    const SparseBitMatrix &hz() const noexcept { return hz_; }
    const SparseBitMatrix &stabilizers(PauliKind k) const { return k == PauliKind::X ? hx_ : hz_; }
    const nlohmann::json &meta() const noexcept { return meta_; }
    nlohmann::json &meta() noexcept { return meta_; }

    bool commutes() const;
    /// Interchanges the X and Z stabilizers.
    CssCode dual() const;

    friend bool operator==(const CssCode &a, const CssCode &b) {
        return a.n_ == b.n_ && a.hx_ == b.hx_ && a.hz_ == b.hz_;
    }

   private:
    std::size_t n_ = 0;
    SparseBitMatrix hx_;
    SparseBitMatrix hz_;
    nlohmann::json meta_ = nlohmann::json::object();
};

enum class DistanceMethod { Exact, LowerBound, Estimate };
std::string to_string(DistanceMethod m);

/// A code distance together with how it was obtained. `value` is empty for
/// the infinite distance of a code without logical qubits.
struct DistanceResult {
    std::optional<std::size_t> value;
    DistanceMethod method = DistanceMethod::Exact;
    std::optional<BitVector> witness;
    std::size_t states_explored = 0;

    bool infinite() const { return !value.has_value(); }
};

struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t n_x = 0;  // X-stabilizer generators
    std::size_t n_z = 0;
    std::size_t w_x = 0;
    std::size_t w_z = 0;
    std::size_t q_x = 0;
    std::size_t q_z = 0;
    std::optional<DistanceResult> d_x;
    std::optional<DistanceResult> d_z;
};

/// Full parameter ledger; throws CommutationViolation naming the first
/// anticommuting (X row, Z row) pair.
CodeParams validate(const CssCode &code);
/// Ledger without the commutation check (used on intermediate results).
CodeParams params_of(const CssCode &code);
std::size_t logical_count(const CssCode &code);

/// The bipartite graph G_Q: qubits of Q on the left, X-stabilizers touching
/// Q on the right.
struct SupportGraph {
    std::vector<std::size_t> left;   // sorted qubit indices
    std::vector<std::size_t> right;  // sorted X-stabilizer indices
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (qubit, x-stabilizer)

    /// Partition of `left` into connected components, each sorted; the
    /// components are ordered by their smallest qubit.
    std::vector<std::vector<std::size_t>> left_components() const;
};

SupportGraph support_graph(const CssCode &code, const std::vector<std::size_t> &q_set);
/// Same as support_graph(...).left_components(), computed directly.
std::vector<std::vector<std::size_t>> support_components(const std::vector<std::vector<std::size_t>> &x_of_qubit,
                                                         std::span<const std::size_t> q_set);

struct Reasonableness {
    bool reasonable = true;
    std::optional<std::size_t> stabilizer;   // violating Z-stabilizer row
    std::vector<std::size_t> component;      // its offending component
};

Reasonableness is_reasonable(const CssCode &code);
/// Splits every Z-stabilizer into its support-graph components (dropping
/// duplicate rows). Throws NotReasonable if the code is not reasonable.
CssCode make_connected(const CssCode &code);
bool is_connected(const CssCode &code);

}  // namespace qwr
