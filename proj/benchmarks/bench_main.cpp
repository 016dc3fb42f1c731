#include <benchmark/benchmark.h>

#include <algorithm>

#include "qwr/cone.hpp"
#include "qwr/copy_gauge.hpp"
#include "qwr/distance.hpp"
#include "qwr/fixtures.hpp"
#include "qwr/graph.hpp"
#include "qwr/pipeline.hpp"
#include "qwr/randapplic.hpp"
#include "qwr/rng.hpp"
#include "qwr/thicken.hpp"

namespace {

qwr::SparseBitMatrix random_sparse(std::size_t rows, std::size_t cols, std::size_t per_row, std::uint64_t seed) {
    qwr::Rng rng(seed);
    std::vector<std::vector<std::size_t>> supports(rows);
    for (auto &s : supports) {
        while (s.size() < per_row) {
            const auto c = static_cast<std::size_t>(rng.below(cols));
            if (std::find(s.begin(), s.end(), c) == s.end()) s.push_back(c);
        }
        std::sort(s.begin(), s.end());
    }
    return qwr::SparseBitMatrix(rows, cols, std::move(supports));
}

void BM_DenseRank(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = random_sparse(n, n, 6, 1);
    for (auto _ : state) benchmark::DoNotOptimize(qwr::rank(m));
}
BENCHMARK(BM_DenseRank)->Arg(256)->Arg(1024)->Arg(2048);

void BM_SparseRank(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = random_sparse(n, n, 6, 1);
    for (auto _ : state) benchmark::DoNotOptimize(qwr::sparse_rank(m));
}
BENCHMARK(BM_SparseRank)->Arg(256)->Arg(1024)->Arg(2048)->Arg(16384);

void BM_DistanceExactToric(benchmark::State &state) {
    const auto code = qwr::fixtures::toric(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qwr::distance_exact(code, qwr::PauliKind::X));
}
BENCHMARK(BM_DistanceExactToric)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DistanceEstimateToric(benchmark::State &state) {
    const auto code = qwr::fixtures::toric(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qwr::distance_estimate(code, qwr::PauliKind::X, 16, 3));
}
BENCHMARK(BM_DistanceEstimateToric)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_CopyGauge(benchmark::State &state) {
    const auto code = qwr::fixtures::toric(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qwr::x_reduce(code));
}
BENCHMARK(BM_CopyGauge)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Thicken(benchmark::State &state) {
    const auto code = qwr::fixtures::toric(static_cast<std::size_t>(state.range(0)));
    const auto choice = qwr::choose_heights_coloring(code);
    for (auto _ : state) benchmark::DoNotOptimize(qwr::thicken(code, choice.ell, choice.heights));
}
BENCHMARK(BM_Thicken)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ConeFig1(benchmark::State &state) {
    const auto code = qwr::fixtures::fig1(static_cast<std::size_t>(state.range(0)));
    // Cone over the first Z-stabilizer; the rest stay direct.
    qwr::ConeInput input{code, {}, {}};
    for (std::size_t z = 1; z < code.hz().rows(); ++z) input.direct_z.push_back(z);
    const auto row = code.hz().row(0);
    input.q_sets.emplace_back(row.begin(), row.end());
    for (auto _ : state) {
        const auto complexes = qwr::build_b_complexes(code, input.q_sets);
        benchmark::DoNotOptimize(qwr::cone_code(input, complexes));
    }
}
BENCHMARK(BM_ConeFig1)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ReduceFullToric(benchmark::State &state) {
    const auto code = qwr::fixtures::toric(static_cast<std::size_t>(state.range(0)));
    const qwr::PipelineConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(qwr::reduce_full(code, config, 1));
}
BENCHMARK(BM_ReduceFullToric)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BuildApplicCode(benchmark::State &state) {
    qwr::RandomCodeSpec spec;
    spec.n = static_cast<std::size_t>(state.range(0));
    spec.beta = 5;
    spec.seed = 11;
    for (auto _ : state) benchmark::DoNotOptimize(qwr::build_applic_code(spec));
}
BENCHMARK(BM_BuildApplicCode)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Cheeger(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    qwr::Rng rng(5);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    for (std::size_t v = 0; v < n; ++v) edges.emplace_back(v, (v + 2 + rng.below(n - 3)) % n);
    const qwr::Graph g(n, edges);
    for (auto _ : state) benchmark::DoNotOptimize(qwr::cheeger(g));
}
BENCHMARK(BM_Cheeger)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
