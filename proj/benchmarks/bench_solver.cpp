#include <benchmark/benchmark.h>

#include <vector>

#include "ambinv/simulate.hpp"
#include "ambinv/solver.hpp"

namespace {

using namespace ambinv;

const ModelParams kParams;

GridSpec default_grid() { return GridSpec{}; }

GridSpec small_grid() {
    GridSpec g;
    g.x_lo = -10.0;
    g.x_hi = 10.0;
    g.T = 2.0;
    return g;
}

void BM_StencilRow(benchmark::State& state) {
    const GridSpec spec = default_grid();
    for (auto _ : state) {
        for (int i = 0; i < 79; ++i) {
            auto st = continuation_stencil_at(-9.75 + 0.25 * i, 0.05, kParams, spec,
                                              StencilMode::positive_corrected);
            benchmark::DoNotOptimize(st);
        }
    }
}
BENCHMARK(BM_StencilRow);

void BM_BellmanSweep(benchmark::State& state) {
    ModelParams params = kParams;
    const GridSpec spec = default_grid();
    const Grid grid(spec, params);
    std::vector<double> prev(grid.slice_size(), 0.0);
    std::vector<double> cur(grid.slice_size(), 1.0);
    std::vector<double> out(grid.slice_size(), 0.0);
    for (auto _ : state) {
        bellman_apply(prev, cur, params.T, grid, params,
                      StencilMode::positive_corrected, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(grid.slice_size()));
}
BENCHMARK(BM_BellmanSweep);

void BM_SolveSmall(benchmark::State& state) {
    ModelParams params = kParams;
    params.T = 2.0;
    const GridSpec spec = small_grid();
    for (auto _ : state) {
        auto field = solve(params, spec);
        benchmark::DoNotOptimize(field.values().data());
    }
}
BENCHMARK(BM_SolveSmall)->Unit(benchmark::kMillisecond);

void BM_SimulatePaths(benchmark::State& state) {
    SimConfig cfg;
    cfg.controls_enabled = false;
    cfg.n_paths = state.range(0);
    for (auto _ : state) {
        auto [mean, se] = monte_carlo_cost(0.0, 0.0, nullptr, kParams, cfg);
        benchmark::DoNotOptimize(mean + se);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatePaths)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
