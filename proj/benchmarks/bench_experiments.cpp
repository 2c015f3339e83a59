#include <benchmark/benchmark.h>

#include "mvapprox/experiments.hpp"

using namespace mvapprox;

static void BM_RhoSweep(benchmark::State& state) {
    const int experiment = static_cast<int>(state.range(0));
    const auto eps = default_epsilons(experiment);
    for (auto _ : state) benchmark::DoNotOptimize(rho_sweep(experiment, eps, default_t0s(), default_dprimes()));
}
BENCHMARK(BM_RhoSweep)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_StarRun(benchmark::State& state) {
    const auto variant = state.range(0) == 1 ? StarVariant::Exp1Noise : StarVariant::Exp2Noise;
    for (auto _ : state) benchmark::DoNotOptimize(run_star(variant, kCanonicalStarSeed));
}
BENCHMARK(BM_StarRun)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
