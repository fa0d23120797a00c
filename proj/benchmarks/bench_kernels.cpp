#include <benchmark/benchmark.h>

#include "weylp/kernels.hpp"

namespace {

void BM_CorrWeyl(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const auto kernel = weylp::KernelSpec::weyl_finite(n);
    const double x = 0.5 * std::sqrt(static_cast<double>(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(weylp::corr(kernel, x, x + 0.05));
    }
}
BENCHMARK(BM_CorrWeyl)->Arg(64)->Arg(256)->Arg(1024);

void BM_CorrMatrixGauss(benchmark::State& state) {
    const double T = static_cast<double>(state.range(0));
    const weylp::GridSpec grid{0.0, T, 0.05};
    const auto kernel = weylp::KernelSpec::gauss_limit();
    for (auto _ : state) {
        benchmark::DoNotOptimize(weylp::build_corr_matrix(kernel, grid).sum());
    }
}
BENCHMARK(BM_CorrMatrixGauss)->Arg(10)->Arg(20);

void BM_LimitGap(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const double x = std::sqrt(static_cast<double>(n)) / 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(weylp::limit_gap(n, x, x + 0.3));
    }
}
BENCHMARK(BM_LimitGap)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
