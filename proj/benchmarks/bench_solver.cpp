#include <benchmark/benchmark.h>

#include <random>

#include "mvapprox/covariance.hpp"
#include "mvapprox/experiments.hpp"
#include "mvapprox/solver.hpp"

namespace {

using namespace mvapprox;

NoiseCovariance random_covariance(std::size_t n) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (auto& v : g.reshaped()) v = normal(rng);
    return make_covariance(g * g.transpose() + Matrix::Identity(g.rows(), g.cols()));
}

template <SolveReport (*Solve)(const StencilSetting&, const NoiseCovariance&)>
void BM_Route(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const StencilSetting setting = make_setting(Grid::uniform(-1.0, 2.0 / static_cast<double>(n - 1), n), 0.1, d);
    const NoiseCovariance cov = random_covariance(n);
    for (auto _ : state) benchmark::DoNotOptimize(Solve(setting, cov));
}

void route_args(benchmark::internal::Benchmark* b) {
    for (int n : {16, 64})
        for (int d : {2, 4}) b->Args({n, d});
}

}  // namespace

BENCHMARK(BM_Route<solve_annihilation>)->Name("annihilation")->Apply(route_args);
BENCHMARK(BM_Route<solve_small_system>)->Name("small_system")->Apply(route_args);
BENCHMARK(BM_Route<solve_orthopoly>)->Name("orthopoly")->Apply(route_args);
BENCHMARK(BM_Route<solve_all_routes>)->Name("all_routes")->Apply(route_args);

static void BM_CovarianceFactor(benchmark::State& state) {
    const Matrix m = experiment2_matrix(1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(make_covariance(m));
}
BENCHMARK(BM_CovarianceFactor);
