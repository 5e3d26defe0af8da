#include <benchmark/benchmark.h>

#include "intrsm/special.hpp"

using namespace intrsm;

static void BM_BesselKIntegral(benchmark::State& state) {
    double r = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_k_integral(1.0, r));
        r = r < 40.0 ? r * 1.37 : 0.5;
    }
}
BENCHMARK(BM_BesselKIntegral);

static void BM_BesselKHalfInteger(benchmark::State& state) {
    double r = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_k_half_integer(7.5, r));
        r = r < 40.0 ? r * 1.37 : 0.5;
    }
}
BENCHMARK(BM_BesselKHalfInteger);

BENCHMARK_MAIN();
