#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qwr/code.hpp"
#include "qwr/f2.hpp"

namespace qwr {

inline constexpr std::uint64_t kDefaultDistanceBudget = std::uint64_t{1} << 24;

/// Representatives of the logical operators of the given Pauli type: a basis
/// of ker(H_opposite) modulo the row space of H_kind (exactly K vectors).
std::vector<BitVector> logical_basis(const CssCode &code, PauliKind kind);

/// True iff v is a logical operator of type `kind` outside the stabilizer
/// group: it commutes with the opposite stabilizers and is not generated by
/// the same-type ones.
bool is_nontrivial_logical(const CssCode &code, PauliKind kind, const BitVector &v);

/// Minimum weight of a nontrivial logical of type `kind`. Enumerates
/// supports by increasing weight while that is cheaper than walking the
/// whole kernel, otherwise walks the kernel in Gray-code order. When neither
/// fits in `budget` states the result has method LowerBound and value w+1,
/// w being the largest weight that was excluded. K = 0 gives the infinite
/// sentinel.
DistanceResult distance_exact(const CssCode &code, PauliKind kind, std::uint64_t budget = kDefaultDistanceBudget);

inline constexpr std::size_t kEstimatePairPool = 1024;

/// Randomized upper estimate: per trial, the kernel basis after a random
/// column permutation (an information set), scanning basis vectors and
/// the pairwise sums of the kEstimatePairPool lightest ones. Deterministic
/// for a fixed seed.
DistanceResult distance_estimate(const CssCode &code, PauliKind kind, std::size_t trials, std::uint64_t seed);

}  // namespace qwr
