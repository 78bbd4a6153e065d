// bench_solvers.cpp — steady-state solve costs, band and full Liouvillian

#include <benchmark/benchmark.h>

#include "mpcav/dynamics.hpp"
#include "mpcav/lindblad.hpp"

namespace {

mpcav::ModelParams bench_params() {
    mpcav::ModelParams p;
    p.gamma = 1.0;
    p.kappa = 1e-3;
    p.nbar = 0.1;
    p.eta = 0.05;
    p.xi = 0.0;
    p.omega = 50.0;
    p.Omega = 10.0;
    return p;
}

void BM_BandSteadyState(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const auto W = mpcav::build_rate_matrix(bench_params(), 2, n_max);
    for (auto _ : state) benchmark::DoNotOptimize(mpcav::steady_state(W));
}
BENCHMARK(BM_BandSteadyState)->Arg(64)->Arg(256)->Arg(512);

void BM_AdaptiveTruncation(benchmark::State& state) {
    const auto p = bench_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(mpcav::adaptive_truncation(p, 2, 1e-8));
}
BENCHMARK(BM_AdaptiveTruncation);

void BM_FullLiouvillianSteadyState(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const auto model = mpcav::build_lindblad_model(bench_params(), n_max);
    const Eigen::MatrixXcd L = mpcav::build_liouvillian(model);
    for (auto _ : state) benchmark::DoNotOptimize(mpcav::full_steady_state(L));
}
BENCHMARK(BM_FullLiouvillianSteadyState)->Arg(8)->Arg(16)->Arg(24);

} // namespace

BENCHMARK_MAIN();
