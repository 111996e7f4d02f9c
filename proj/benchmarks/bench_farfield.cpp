#include <benchmark/benchmark.h>

#include "fflab/analyticity.hpp"
#include "fflab/farfield.hpp"
#include "fflab/forward.hpp"
#include "fflab/medium.hpp"

using namespace fflab;

namespace {

const LippmannSchwingerSolver& shared_solver(int n) {
    static const LippmannSchwingerSolver s48(
        disc_medium({0.0, 0.0}, 1.0, cplx(1.5, 0.0), GridBox({0.0, 0.0}, {1.5, 1.5}, {48, 48})),
        Wavenumber(2.0));
    static const LippmannSchwingerSolver s96(
        disc_medium({0.0, 0.0}, 1.0, cplx(1.5, 0.0), GridBox({0.0, 0.0}, {1.5, 1.5}, {96, 96})),
        Wavenumber(2.0));
    return n == 48 ? s48 : s96;
}

} // namespace

static void BM_FarFieldMatrix32(benchmark::State& state) {
    const auto& solver = shared_solver(static_cast<int>(state.range(0)));
    const auto set = DirectionSet::uniform_circle(32);
    for (auto _ : state) {
        benchmark::DoNotOptimize(far_field_matrix(solver, set, set));
    }
}
BENCHMARK(BM_FarFieldMatrix32)->Unit(benchmark::kMillisecond)->Arg(48)->Arg(96);

static void BM_HolomorphicExtension(benchmark::State& state) {
    const auto& solver = shared_solver(static_cast<int>(state.range(0)));
    const ComplexChartCoord z(cplx(0.1, 0.08));
    const ComplexChartCoord w(cplx(-0.2, 0.05));
    for (auto _ : state) {
        benchmark::DoNotOptimize(holomorphic_extension(solver, z, w, ChartId::plus, ChartId::minus));
    }
}
BENCHMARK(BM_HolomorphicExtension)->Unit(benchmark::kMillisecond)->Arg(48)->Arg(96);

static void BM_TaylorModelP8(benchmark::State& state) {
    const auto& solver = shared_solver(static_cast<int>(state.range(0)));
    const UnitDirection xhat0 = UnitDirection::from_angle(1.5 * pi);
    const UnitDirection theta0 = UnitDirection::from_angle(0.3 * pi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(taylor_coefficients(solver, xhat0, theta0, 8, 0.1));
    }
}
BENCHMARK(BM_TaylorModelP8)->Unit(benchmark::kMillisecond)->Arg(48);

static void BM_FourierDecay64(benchmark::State& state) {
    const auto samples = sample_torus(shared_solver(48), 64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier_decay(samples));
    }
}
BENCHMARK(BM_FourierDecay64);
