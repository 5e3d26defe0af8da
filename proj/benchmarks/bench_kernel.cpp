#include <benchmark/benchmark.h>

#include "intrsm/builtin.hpp"
#include "intrsm/kernelbound.hpp"
#include "intrsm/montecarlo.hpp"

using namespace intrsm;

static void BM_GammaQuadrature1D(benchmark::State& state) {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    std::vector<double> x{10.0}, y{5.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_kernel(spec, 1.0, x, y, GammaMethod::Quadrature));
}
BENCHMARK(BM_GammaQuadrature1D);

static void BM_GammaMonteCarlo(benchmark::State& state) {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    std::vector<double> x{10.0}, y{5.0};
    GammaOptions opt;
    opt.samples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_kernel(spec, 1.0, x, y, GammaMethod::MonteCarlo, opt));
}
BENCHMARK(BM_GammaMonteCarlo)->Arg(50000)->Arg(200000);

static void BM_StableIncrement(benchmark::State& state) {
    Rng rng(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_stable_increment(0.5, 1, 1.0, rng));
}
BENCHMARK(BM_StableIncrement);

static void BM_TemperedIncrement(benchmark::State& state) {
    Rng rng(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_relativistic_increment(0.5, 1.0, 1, 1.0, rng));
}
BENCHMARK(BM_TemperedIncrement);

BENCHMARK_MAIN();
