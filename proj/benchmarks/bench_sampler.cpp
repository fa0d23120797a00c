#include <benchmark/benchmark.h>

#include "weylp/sampler.hpp"

namespace {

void BM_WeylSigns(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const auto model = weylp::WeylModel::for_degree(n);
    const weylp::GridSpec grid{0.0, model.envelope(), 0.05};
    const weylp::RngStream rng{20250601, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            weylp::sample_weyl_signs(model, grid, 2048, rng).survived);
    }
    state.SetItemsProcessed(state.iterations() * 2048);
}
BENCHMARK(BM_WeylSigns)->Arg(64)->Arg(256);

void BM_StationarySigns(benchmark::State& state) {
    const double T = static_cast<double>(state.range(0));
    const auto kernel = weylp::KernelSpec::gauss_limit();
    const weylp::RngStream rng{20250601, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            weylp::sample_stationary_signs(kernel, T, 0.05, 2048, rng).survived);
    }
    state.SetItemsProcessed(state.iterations() * 2048);
}
BENCHMARK(BM_StationarySigns)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
