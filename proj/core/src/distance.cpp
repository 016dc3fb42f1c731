#include "qwr/distance.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "qwr/parallel.hpp"
#include "qwr/rng.hpp"

namespace qwr {

namespace {

using Words = std::vector<std::uint64_t>;

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Syndrome layout shared by every search: check bits of H followed by the
// anticommutation bits against the opposite-type logical basis.
struct Syndromes {
    std::size_t check_words = 0;
    std::size_t logical_words = 0;
    std::vector<Words> columns;

    std::size_t width() const { return check_words + logical_words; }

    bool is_logical(const std::uint64_t *s) const {
        for (std::size_t w = 0; w < check_words; ++w) {
            if (s[w]) return false;
        }
        for (std::size_t w = 0; w < logical_words; ++w) {
            if (s[check_words + w]) return true;
        }
        return false;
    }
};

Syndromes build_syndromes(const SparseBitMatrix &checks, const std::vector<BitVector> &tests, std::size_t n) {
    Syndromes s;
    s.check_words = words_for(checks.rows());
    s.logical_words = words_for(tests.size());
    s.columns.assign(n, Words(s.width(), 0));
    for (std::size_t r = 0; r < checks.rows(); ++r) {
        for (auto c : checks.row(r)) s.columns[c][r / 64] ^= std::uint64_t{1} << (r % 64);
    }
    for (std::size_t t = 0; t < tests.size(); ++t) {
        for (auto c : tests[t].support()) {
            s.columns[c][s.check_words + t / 64] ^= std::uint64_t{1} << (t % 64);
        }
    }
    return s;
}

Words syndrome_of(const Syndromes &s, const BitVector &v) {
    Words out(s.width(), 0);
    for (auto c : v.support()) {
        for (std::size_t w = 0; w < out.size(); ++w) out[w] ^= s.columns[c][w];
    }
    return out;
}

__extension__ using Wide = unsigned __int128;

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Wide r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

// Depth-first enumeration of all supports of exactly `weight` columns in
// lexicographic order; stops at the first logical found.
class WeightSearch {
   public:
    WeightSearch(const Syndromes &s, std::size_t n) : s_(s), n_(n) {}

    std::optional<std::vector<std::size_t>> run(std::size_t weight) {
        chosen_.assign(weight, 0);
        stack_.assign((weight + 1) * s_.width(), 0);
        if (descend(0, 0, weight)) return chosen_;
        return std::nullopt;
    }

   private:
    bool descend(std::size_t depth, std::size_t start, std::size_t weight) {
        const std::size_t width = s_.width();
        const std::uint64_t *acc = stack_.data() + depth * width;
        if (depth == weight) return s_.is_logical(acc);
        std::uint64_t *next = stack_.data() + (depth + 1) * width;
        for (std::size_t c = start; c + (weight - depth) <= n_; ++c) {
            const auto &col = s_.columns[c];
            for (std::size_t w = 0; w < width; ++w) next[w] = acc[w] ^ col[w];
            chosen_[depth] = c;
            if (descend(depth + 1, c + 1, weight)) return true;
        }
        return false;
    }

    const Syndromes &s_;
    std::size_t n_;
    std::vector<std::size_t> chosen_;
    Words stack_;
};

struct GrayBest {
    std::size_t weight = std::numeric_limits<std::size_t>::max();
    std::uint64_t mask = 0;
};

bool better(const GrayBest &a, const GrayBest &b) {
    return a.weight < b.weight || (a.weight == b.weight && a.mask < b.mask);
}

// Walks every element of the kernel spanned by `basis`, split into chunks by
// the top basis coordinates.
GrayBest kernel_walk(const std::vector<Words> &vectors, const std::vector<Words> &logical_bits,
                     const Syndromes &s) {
    const std::size_t dim = vectors.size();
    const std::size_t top = thread_count() > 1 ? std::min<std::size_t>(dim, 6) : 0;
    const std::size_t low = dim - top;
    const std::size_t chunks = std::size_t{1} << top;
    const std::size_t vwords = vectors.empty() ? 0 : vectors.front().size();
    std::vector<GrayBest> results(chunks);
    parallel_for(chunks, [&](std::size_t chunk) {
        Words v(vwords, 0);
        Words l(s.logical_words, 0);
        for (std::size_t b = 0; b < top; ++b) {
            if ((chunk >> b) & 1U) {
                for (std::size_t w = 0; w < vwords; ++w) v[w] ^= vectors[low + b][w];
                for (std::size_t w = 0; w < l.size(); ++w) l[w] ^= logical_bits[low + b][w];
            }
        }
        GrayBest best;
        const std::uint64_t high_mask = static_cast<std::uint64_t>(chunk) << low;
        auto consider = [&](std::uint64_t gray) {
            bool nontrivial = false;
            for (auto w : l) nontrivial = nontrivial || w != 0;
            if (!nontrivial) return;
            std::size_t weight = 0;
            for (auto w : v) weight += static_cast<std::size_t>(std::popcount(w));
            GrayBest cand{weight, high_mask | gray};
            if (better(cand, best)) best = cand;
        };
        consider(0);
        const std::uint64_t total = std::uint64_t{1} << low;
        for (std::uint64_t i = 1; i < total; ++i) {
            auto b = static_cast<std::size_t>(std::countr_zero(i));
            for (std::size_t w = 0; w < vwords; ++w) v[w] ^= vectors[b][w];
            for (std::size_t w = 0; w < l.size(); ++w) l[w] ^= logical_bits[b][w];
            consider(i ^ (i >> 1));
        }
        results[chunk] = best;
    });
    GrayBest best;
    for (const auto &r : results) {
        if (better(r, best)) best = r;
    }
    return best;
}

}  // namespace

std::vector<BitVector> logical_basis(const CssCode &code, PauliKind kind) {
    RowSpace same(code.stabilizers(kind));
    std::vector<BitVector> out;
    for (auto &v : kernel_basis(code.stabilizers(opposite(kind)))) {
        if (same.insert(v)) out.push_back(std::move(v));
    }
    return out;
}

bool is_nontrivial_logical(const CssCode &code, PauliKind kind, const BitVector &v) {
    if (!code.stabilizers(opposite(kind)).multiply(v).is_zero()) return false;
    for (const auto &t : logical_basis(code, opposite(kind))) {
        if (t.dot(v) % 2 == 1) return true;
    }
    return false;
}

DistanceResult distance_exact(const CssCode &code, PauliKind kind, std::uint64_t budget) {
    const auto &checks = code.stabilizers(opposite(kind));
    const auto tests = logical_basis(code, opposite(kind));
    DistanceResult result;
    result.method = DistanceMethod::Exact;
    if (tests.empty()) return result;

    const std::size_t n = code.n();
    const auto syndromes = build_syndromes(checks, tests, n);
    const auto kernel = kernel_basis(checks);
    const std::size_t dim = kernel.size();
    const std::uint64_t kernel_states =
        dim < 63 ? (std::uint64_t{1} << dim) : std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t weight_cap = std::min(budget, kernel_states);

    WeightSearch search(syndromes, n);
    std::uint64_t explored = 0;
    std::size_t excluded = 0;
    for (std::size_t w = 1; w <= n; ++w) {
        const auto cost = binomial_saturating(n, w);
        if (cost > weight_cap || explored + cost > weight_cap) break;
        explored += cost;
        if (auto found = search.run(w)) {
            result.value = w;
            result.witness = BitVector(n, *found);
            result.states_explored = explored;
            return result;
        }
        excluded = w;
    }

    if (kernel_states <= budget) {
        std::vector<Words> vectors;
        std::vector<Words> logical_bits;
        for (const auto &k : kernel) {
            Words v(words_for(n), 0);
            for (auto c : k.support()) v[c / 64] ^= std::uint64_t{1} << (c % 64);
            vectors.push_back(std::move(v));
            auto s = syndrome_of(syndromes, k);
            logical_bits.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(syndromes.check_words), s.end());
        }
        auto best = kernel_walk(vectors, logical_bits, syndromes);
        BitVector witness(n);
        for (std::size_t b = 0; b < dim; ++b) {
            if ((best.mask >> b) & 1U) witness = witness ^ kernel[b];
        }
        result.value = best.weight;
        result.witness = std::move(witness);
        result.states_explored = explored + kernel_states;
        return result;
    }

    result.method = DistanceMethod::LowerBound;
    result.value = excluded + 1;
    result.states_explored = explored;
    return result;
}

DistanceResult distance_estimate(const CssCode &code, PauliKind kind, std::size_t trials, std::uint64_t seed) {
    const auto &checks = code.stabilizers(opposite(kind));
    const auto tests = logical_basis(code, opposite(kind));
    DistanceResult result;
    result.method = DistanceMethod::Estimate;
    if (tests.empty()) return result;
    const std::size_t n = code.n();
    const std::size_t lwords = words_for(tests.size());
    // Anticommutation pattern of each qubit against the test logicals.
    std::vector<Words> test_bits(n, Words(lwords, 0));
    for (std::size_t t = 0; t < tests.size(); ++t) {
        for (auto c : tests[t].support()) test_bits[c][t / 64] ^= std::uint64_t{1} << (t % 64);
    }

    struct TrialBest {
        std::size_t weight = std::numeric_limits<std::size_t>::max();
        BitVector vector;
        std::size_t explored = 0;
    };
    std::vector<TrialBest> bests(std::max<std::size_t>(trials, 1));
    parallel_for(bests.size(), [&](std::size_t t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        std::vector<std::size_t> position(n);
        for (std::size_t p = 0; p < n; ++p) position[perm[p]] = p;
        std::vector<std::vector<std::size_t>> rows;
        rows.reserve(checks.rows());
        for (std::size_t r = 0; r < checks.rows(); ++r) {
            std::vector<std::size_t> row;
            for (auto c : checks.row(r)) row.push_back(position[c]);
            std::sort(row.begin(), row.end());
            rows.push_back(std::move(row));
        }
        DenseBitMatrix d(SparseBitMatrix(checks.rows(), n, std::move(rows)));
        const auto pivots = d.rref();
        std::vector<char> is_pivot(n, 0);
        for (auto p : pivots) is_pivot[p] = 1;

        // Kernel vector of free column f: e_f plus the pivots of the rows
        // holding f. Weights and logical patterns are read off column-wise.
        std::vector<std::size_t> weight(n, 1);
        std::vector<Words> logical(n);
        for (std::size_t f = 0; f < n; ++f) {
            if (!is_pivot[f]) logical[f] = test_bits[perm[f]];
        }
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const Words &mask = test_bits[perm[pivots[r]]];
            const std::uint64_t *row = d.row_data(r);
            for (std::size_t w = 0; w < d.words_per_row(); ++w) {
                std::uint64_t bits = row[w];
                while (bits) {
                    const std::size_t f = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    bits &= bits - 1;
                    if (is_pivot[f]) continue;
                    ++weight[f];
                    for (std::size_t k = 0; k < lwords; ++k) logical[f][k] ^= mask[k];
                }
            }
        }
        auto materialize = [&](std::size_t f) {
            std::vector<std::size_t> support{perm[f]};
            for (std::size_t r = 0; r < pivots.size(); ++r) {
                if (d.get(r, f)) support.push_back(perm[pivots[r]]);
            }
            std::sort(support.begin(), support.end());
            return BitVector(n, std::move(support));
        };
        auto nonzero = [](const Words &l) {
            return std::any_of(l.begin(), l.end(), [](std::uint64_t w) { return w != 0; });
        };

        auto &best = bests[t];
        std::vector<std::size_t> free;
        for (std::size_t f = 0; f < n; ++f) {
            if (is_pivot[f]) continue;
            free.push_back(f);
            ++best.explored;
            if (nonzero(logical[f]) && weight[f] < best.weight) {
                best.weight = weight[f];
                best.vector = materialize(f);
            }
        }
        // Pairwise sums over the lightest basis vectors only.
        std::stable_sort(free.begin(), free.end(),
                         [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });
        if (free.size() > kEstimatePairPool) free.resize(kEstimatePairPool);
        std::vector<BitVector> pool;
        pool.reserve(free.size());
        for (auto f : free) pool.push_back(materialize(f));
        for (std::size_t i = 0; i < pool.size(); ++i) {
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                ++best.explored;
                const Words &a = logical[free[i]];
                const Words &b = logical[free[j]];
                bool nontrivial = false;
                for (std::size_t w = 0; w < lwords; ++w) nontrivial = nontrivial || (a[w] ^ b[w]) != 0;
                if (!nontrivial) continue;
                const std::size_t sum = pool[i].weight() + pool[j].weight() - 2 * pool[i].overlap(pool[j]);
                if (sum < best.weight) {
                    best.weight = sum;
                    best.vector = pool[i] ^ pool[j];
                }
            }
        }
    });
    std::size_t explored = 0;
    const TrialBest *winner = nullptr;
    for (const auto &b : bests) {
        explored += b.explored;
        if (winner == nullptr || b.weight < winner->weight) winner = &b;
    }
    result.value = winner->weight;
    result.witness = winner->vector;
    result.states_explored = explored;
    return result;
}

}  // namespace qwr
