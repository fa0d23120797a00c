#include <benchmark/benchmark.h>

#include "weylp/series.hpp"

namespace {

void BM_LogPartialExp(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const double z = 0.8 * static_cast<double>(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weylp::log_partial_exp(n, z).log_magnitude);
    }
}
BENCHMARK(BM_LogPartialExp)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_AlternatingPartialExp(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const double z = 0.1 * static_cast<double>(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weylp::alternating_partial_exp(n, z).value);
    }
}
BENCHMARK(BM_AlternatingPartialExp)->Arg(64)->Arg(256)->Arg(1024);

void BM_PoissonTail(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    const double x = static_cast<double>(n) - 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(weylp::poisson_tail(n, x));
    }
}
BENCHMARK(BM_PoissonTail)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
