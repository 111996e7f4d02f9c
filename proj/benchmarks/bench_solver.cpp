#include <benchmark/benchmark.h>

#include "fflab/forward.hpp"
#include "fflab/medium.hpp"

using namespace fflab;

namespace {

RefractiveIndexField disc_at(int n) {
    return disc_medium({0.0, 0.0}, 1.0, cplx(1.5, 0.0), GridBox({0.0, 0.0}, {1.5, 1.5}, {n, n}));
}

} // namespace

// factorization cost dominates everything at desk scale
static void BM_SolverFactorization(benchmark::State& state) {
    const auto m = disc_at(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(LippmannSchwingerSolver(m, Wavenumber(2.0)));
    }
}
BENCHMARK(BM_SolverFactorization)->Unit(benchmark::kMillisecond)->Arg(24)->Arg(48);

// one cached scattering solve (triangular solves + field extension)
static void BM_ScatteringSolveCached(benchmark::State& state) {
    const auto m = disc_at(static_cast<int>(state.range(0)));
    const LippmannSchwingerSolver solver(m, Wavenumber(2.0));
    const UnitDirection theta = UnitDirection::from_angle(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.solve_scattering(theta));
    }
}
BENCHMARK(BM_ScatteringSolveCached)->Unit(benchmark::kMillisecond)->Arg(48)->Arg(96);

// support-only source solve, the building block of the far-field pipelines
static void BM_SourceSolveSupport(benchmark::State& state) {
    const auto m = disc_at(static_cast<int>(state.range(0)));
    const LippmannSchwingerSolver solver(m, Wavenumber(2.0));
    Eigen::VectorXcd f = Eigen::VectorXcd::Random(solver.support_size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.solve_source_support(f));
    }
}
BENCHMARK(BM_SourceSolveSupport)->Unit(benchmark::kMillisecond)->Arg(48)->Arg(96);

static void BM_IterativeSolve(benchmark::State& state) {
    const auto m = disc_at(static_cast<int>(state.range(0)));
    SolverConfig cfg;
    cfg.mode = SolverConfig::Mode::iterative;
    cfg.max_iterations = 1000;
    const LippmannSchwingerSolver solver(m, Wavenumber(2.0), cfg);
    Eigen::VectorXcd f = Eigen::VectorXcd::Random(solver.support_size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.solve_source_support(f));
    }
}
BENCHMARK(BM_IterativeSolve)->Unit(benchmark::kMillisecond)->Arg(48)->Arg(96);
