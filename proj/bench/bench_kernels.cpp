// Serial reference against OpenMP paths for the hot kernels.

#include <benchmark/benchmark.h>

#include "qdmap/closed_forms.hpp"
#include "qdmap/kernels.hpp"
#include "qdmap/markovianity.hpp"

using namespace qdmap;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

const Trajectory& counterexample_trajectory() {
    static const Trajectory traj = [] {
        const TraceGenScenario sc = blp_counterexample_scenario();
        return t_ordered_evolve(trace_gen_generator(sc.params), sc.grid);
    }();
    return traj;
}

void BM_ChoiMinEigenvalues(benchmark::State& state) {
    const auto& maps = counterexample_trajectory().maps;
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::choi_min_eigenvalues(maps, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(maps.size()));
}

void BM_PairTraceDistances(benchmark::State& state) {
    const auto& maps = counterexample_trajectory().maps;
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs;
    for (const auto& p : blp_sample_pairs(2, 64, 42))
        pairs.emplace_back(p.rho, p.sigma);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::pair_trace_distances(maps, pairs, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(maps.size() * pairs.size()));
}

void BM_TOrderedEvolve(benchmark::State& state) {
    const WilcoxPair pair{RateFunction::constant(1.0), RateFunction::polynomial({0.0, 1.0})};
    const Generator gen = wilcox_generator(pair);
    const TimeGrid grid(2.0, 2000);
    for (auto _ : state)
        benchmark::DoNotOptimize(t_ordered_evolve(gen, grid, exec_of(state)));
}

} // namespace

BENCHMARK(BM_ChoiMinEigenvalues)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairTraceDistances)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TOrderedEvolve)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
