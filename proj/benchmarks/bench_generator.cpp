// bench_generator.cpp — generator assembly costs

#include <benchmark/benchmark.h>

#include "mpcav/fock.hpp"
#include "mpcav/rate_matrix.hpp"

namespace {

mpcav::ModelParams bench_params() {
    mpcav::ModelParams p;
    p.gamma = 1.0;
    p.kappa = 1e-3;
    p.nbar = 0.1;
    p.eta = 0.07;
    p.xi = 0.2;
    return p;
}

void BM_QuadraturePower(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mpcav::quadrature_power(k));
}
BENCHMARK(BM_QuadraturePower)->Arg(4)->Arg(8)->Arg(12);

void BM_BuildRateMatrix(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const auto p = bench_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(mpcav::build_rate_matrix(p, N, 128));
}
BENCHMARK(BM_BuildRateMatrix)->Arg(1)->Arg(2)->Arg(3)->Arg(5);

void BM_Eta4TwoPathCheck(benchmark::State& state) {
    const auto p = bench_params();
    for (auto _ : state) benchmark::DoNotOptimize(mpcav::eta4_generator_check(p, 32));
}
BENCHMARK(BM_Eta4TwoPathCheck);

} // namespace
