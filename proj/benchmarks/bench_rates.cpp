#include <benchmark/benchmark.h>

#include "intrsm/builtin.hpp"
#include "intrsm/rates.hpp"

#include <cmath>

using namespace intrsm;

static void BM_DeriveConstants(benchmark::State& state) {
    PotentialSpec pot{PotentialFamily::PowerLog, 0.5, 1.0, 0.0, {}, {}};
    for (auto _ : state) benchmark::DoNotOptimize(derive_constants(pot));
}
BENCHMARK(BM_DeriveConstants);

static void BM_RateEvaluatorCtor(benchmark::State& state) {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    for (auto _ : state) {
        RateEvaluator ev(spec);
        benchmark::DoNotOptimize(ev.r0_beta());
    }
}
BENCHMARK(BM_RateEvaluatorCtor);

static void BM_AlphaFractional(benchmark::State& state) {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.5, 1.0);
    RateEvaluator ev(spec);
    double log_u = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.alpha_logu(log_u));
        log_u = log_u < 138.0 ? log_u + 1.0 : 10.0;
    }
}
BENCHMARK(BM_AlphaFractional);

static void BM_BetaBisection(benchmark::State& state) {
    auto spec = builtin_model(BuiltinPairing::RelativisticPower, 0.5, 1.0);
    RateEvaluator ev(spec);
    double log_u = 30.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.beta_logu(log_u));
        log_u = log_u < 138.0 ? log_u + 1.0 : 30.0;
    }
}
BENCHMARK(BM_BetaBisection);

static void BM_RateTable60(benchmark::State& state) {
    auto spec = builtin_model(BuiltinPairing::FractionalPowerLog, 0.1, 1.0);
    auto w = builtin_witness(spec);
    std::vector<double> grid;
    for (int k = 12; k <= 60; ++k) grid.push_back(static_cast<double>(k));
    for (auto _ : state) benchmark::DoNotOptimize(rate_table(spec, w, grid, 1));
}
BENCHMARK(BM_RateTable60);

BENCHMARK_MAIN();
