#include <benchmark/benchmark.h>

#include "fflab/bessel.hpp"
#include "fflab/forward.hpp"
#include "fflab/medium.hpp"

using namespace fflab;

static void BM_BesselJ0_series(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j(0, x));
        x = x < 16.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_BesselJ0_series);

static void BM_BesselJ0_asymptotic(benchmark::State& state) {
    double x = 18.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j(0, x));
        x = x < 49.0 ? x + 0.37 : 18.0;
    }
}
BENCHMARK(BM_BesselJ0_asymptotic);

static void BM_BesselSequence30(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j_sequence(30, 12.3));
    }
}
BENCHMARK(BM_BesselSequence30);

static void BM_GreensFunction(benchmark::State& state) {
    const Wavenumber k(2.0);
    double r = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(greens_function(k, r));
        r = r < 4.0 ? r + 0.013 : 0.01;
    }
}
BENCHMARK(BM_GreensFunction);

static void BM_KernelTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridBox grid({0.0, 0.0}, {1.5, 1.5}, {n, n});
    for (auto _ : state) {
        benchmark::DoNotOptimize(KernelTable(grid, Wavenumber(2.0)));
    }
}
BENCHMARK(BM_KernelTable)->Arg(48)->Arg(96);
