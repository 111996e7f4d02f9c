// Acceptance suite: one criterion per block, every tolerance pinned in code.
// Prints one line per clause and a PASS/FAIL verdict per criterion; the exit
// code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fflab/analyticity.hpp"
#include "fflab/bessel.hpp"
#include "fflab/farfield.hpp"
#include "fflab/forward.hpp"
#include "fflab/geometry.hpp"
#include "fflab/medium.hpp"
#include "fflab/mie.hpp"
#include "fflab/types.hpp"

using namespace fflab;

namespace {

int g_failed_criteria = 0;

class Criterion {
public:
    Criterion(int id, const std::string& title) : id_(id) {
        std::printf("criterion %d: %s\n", id, title.c_str());
    }

    void clause(const std::string& what, double observed, const char* cmp, double required) {
        bool ok = false;
        const std::string op(cmp);
        if (op == "<") ok = observed < required;
        else if (op == "<=") ok = observed <= required;
        else if (op == ">") ok = observed > required;
        else if (op == ">=") ok = observed >= required;
        else if (op == "==") ok = observed == required;
        ok_ = ok_ && ok;
        std::printf("    %-52s observed %-12.5g required %s %-10.5g %s\n", what.c_str(), observed,
                    cmp, required, ok ? "ok" : "VIOLATED");
    }

    void note(const std::string& text) { std::printf("    note: %s\n", text.c_str()); }

    bool finish() {
        std::printf("[%s] criterion %d\n\n", ok_ ? "PASS" : "FAIL", id_);
        if (!ok_) ++g_failed_criteria;
        return ok_;
    }

private:
    int id_;
    bool ok_ = true;
};

double uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) / static_cast<double>(1ULL << 53);
}

GridBox box_n(int n) { return GridBox({0.0, 0.0}, {1.5, 1.5}, {n, n}); }

Eigen::MatrixXcd mie_matrix(const MieSeries& series, const DirectionSet& set) {
    Eigen::MatrixXcd out(set.size(), set.size());
    for (int i = 0; i < set.size(); ++i) {
        for (int j = 0; j < set.size(); ++j) {
            out(i, j) = mie_far_field(series, set.directions[static_cast<std::size_t>(i)],
                                      set.directions[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

// grid-quadrature Born matrix: c k^2 h^2 sum_s q_s e^{ik(theta_j - x^_i).y_s}
Eigen::MatrixXcd born_matrix(const LippmannSchwingerSolver& solver, const DirectionSet& set) {
    const double k = solver.wavenumber().value();
    const auto& pts = solver.support_points();
    const Eigen::Index ns = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXcd eobs(set.size(), ns), einc(ns, set.size());
    for (int i = 0; i < set.size(); ++i) {
        const double kx = k * set.directions[static_cast<std::size_t>(i)][0];
        const double ky = k * set.directions[static_cast<std::size_t>(i)][1];
        for (Eigen::Index s = 0; s < ns; ++s) {
            const double phase = kx * pts[static_cast<std::size_t>(s)][0]
                                 + ky * pts[static_cast<std::size_t>(s)][1];
            eobs(i, s) = cplx(std::cos(phase), -std::sin(phase));
            einc(s, i) = cplx(std::cos(phase), std::sin(phase));
        }
    }
    const Eigen::MatrixXcd qe = solver.support_contrast().asDiagonal() * einc;
    const cplx scale = far_field_constant(2, solver.wavenumber()) * k * k
                       * solver.medium().grid().cell_area();
    return scale * (eobs * qe);
}

double max_antipodal_residual(const FarFieldSamples& samples) {
    const auto& set = samples.observation;
    double worst = 0.0;
    for (int i = 0; i < set.size(); ++i) {
        for (int j = 0; j < set.size(); ++j) {
            worst = std::max(worst,
                             std::abs(samples.values(i, j)
                                      - samples.values(set.antipode_index(j), set.antipode_index(i))));
        }
    }
    return worst;
}

void criterion_1_oracle(std::unique_ptr<LippmannSchwingerSolver>& disc96) {
    Criterion c(1, "oracle agreement for the disc (R=1, n0=1.5, k=2, box [-1.5,1.5]^2)");
    const Wavenumber k(2.0);
    const auto set = DirectionSet::uniform_circle(32);
    const auto series = mie_build(1.0, cplx(1.5, 0.0), k);
    const Eigen::MatrixXcd reference = mie_matrix(series, set);

    const auto t0 = std::chrono::steady_clock::now();
    disc96 = std::make_unique<LippmannSchwingerSolver>(
        disc_medium({0.0, 0.0}, 1.0, cplx(1.5, 0.0), box_n(96)), k);
    const auto u96 = far_field_matrix(*disc96, set, set);
    const double err96 = (u96.values - reference).norm() / reference.norm();
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const LippmannSchwingerSolver solver48(disc_medium({0.0, 0.0}, 1.0, cplx(1.5, 0.0), box_n(48)), k);
    const auto u48 = far_field_matrix(solver48, set, set);
    const double err48 = (u48.values - reference).norm() / reference.norm();

    // interior (near-field) agreement for one incidence direction
    const UnitDirection theta = UnitDirection::from_angle(0.0);
    const auto sol = disc96->solve_scattering(theta);
    double num = 0.0, den = 0.0;
    const GridBox& grid = disc96->medium().grid();
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Vec2 y = grid.cell_center(ix, iy);
            if (y[0] * y[0] + y[1] * y[1] >= 1.0) continue;
            const cplx oracle = mie_near_field(series, y, theta);
            num += std::norm(sol.total[static_cast<std::size_t>(grid.index(ix, iy))] - oracle);
            den += std::norm(oracle);
        }
    }
    const double near_err = std::sqrt(num / den);

    c.clause("rel Frobenius error at 96^2", err96, "<", 5e-3);
    c.clause("error reduction when halving h (48^2 -> 96^2)", err48 / err96, ">=", 1.8);
    c.clause("interior field rel L2 error vs the series at 96^2", near_err, "<", 5e-3);
    c.clause("runtime of the 96^2 experiment [s]", runtime, "<", 60.0);
    c.finish();
}

void criterion_2_normalization() {
    Criterion c(2, "normalization lock against the directly quadratured Born integral");
    const Wavenumber k(2.0);
    const auto set = DirectionSet::uniform_circle(32);
    auto rel_for = [&](double eps) {
        const LippmannSchwingerSolver solver(
            disc_medium({0.0, 0.0}, 1.0, cplx(1.0 + eps, 0.0), box_n(96)), k);
        const auto u = far_field_matrix(solver, set, set);
        const Eigen::MatrixXcd born = born_matrix(solver, set);
        return (u.values - born).norm() / born.norm();
    };
    const double rel3 = rel_for(1e-3);
    const double rel2 = rel_for(1e-2);
    c.clause("rel error at contrast 1e-3", rel3, "<=", 2e-3);
    c.clause("residual linearity across one decade |r2/(10 r3) - 1|",
             std::abs(rel2 / (10.0 * rel3) - 1.0), "<=", 0.3);
    c.finish();
}

void criterion_3_factorization(const LippmannSchwingerSolver& disc96,
                               const LippmannSchwingerSolver& bump96) {
    Criterion c(3, "factorization identity F = c A* T A over seeded densities");
    const auto set = DirectionSet::uniform_circle(32);
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (const auto* solver : {&disc96, &bump96}) {
        for (int trial = 0; trial < 10; ++trial) {
            HerglotzDensity g;
            for (int j = 0; j < 32; ++j) g.values.push_back({uniform(rng) - 0.5, uniform(rng) - 0.5});
            const auto check = factorization_residual(*solver, set, set, g);
            if (!check.no_signal) worst = std::max(worst, check.residual);
        }
    }
    c.clause("max residual over disc and bump, 10 densities each", worst, "<", 1e-8);
    c.finish();
}

void criterion_4_w_identity(const LippmannSchwingerSolver& disc96) {
    Criterion c(4, "W operator identity against c A* T for seeded sources");
    const auto set = DirectionSet::uniform_circle(32);
    const Wavenumber k = disc96.wavenumber();
    const GridBox& grid = disc96.medium().grid();
    const cplx c2 = far_field_constant(2, k);
    std::mt19937_64 rng(19);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        GridField f(grid);
        for (auto& v : f.values) v = {uniform(rng) - 0.5, uniform(rng) - 0.5};
        // route one: radiate the source solution and read its far field
        const SourceSolution v = disc96.solve_source(f);
        std::vector<cplx> wf(32);
        for (int i = 0; i < 32; ++i) {
            const auto& xhat = set.directions[static_cast<std::size_t>(i)];
            cplx acc(0.0, 0.0);
            for (int iy = 0; iy < grid.ny(); ++iy) {
                for (int ix = 0; ix < grid.nx(); ++ix) {
                    const cplx q = disc96.medium().at(ix, iy) - 1.0;
                    if (q == cplx(0.0, 0.0)) continue;
                    const std::size_t idx = static_cast<std::size_t>(grid.index(ix, iy));
                    const Vec2 y = grid.cell_center(ix, iy);
                    const double phase = -k.value() * (xhat[0] * y[0] + xhat[1] * y[1]);
                    acc += q * (f.values[idx] + v.v[idx]) * cplx(std::cos(phase), std::sin(phase));
                }
            }
            wf[static_cast<std::size_t>(i)] =
                c2 * k.value() * k.value() * grid.cell_area() * acc;
        }
        // route two: adjoint Herglotz of T f
        const GridField tf = disc96.apply_T(f);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 32; ++i) {
            const cplx rhs = c2 * herglotz_adjoint(tf, set.directions[static_cast<std::size_t>(i)], k);
            num += set.weights[static_cast<std::size_t>(i)]
                   * std::norm(wf[static_cast<std::size_t>(i)] - rhs);
            den += set.weights[static_cast<std::size_t>(i)]
                   * std::norm(wf[static_cast<std::size_t>(i)]);
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    c.clause("max ||Wf - c A*Tf|| / ||Wf|| over 10 sources", worst, "<", 1e-8);
    c.finish();
}

void criterion_5_reciprocity(const LippmannSchwingerSolver& disc96,
                             const LippmannSchwingerSolver& bump96) {
    Criterion c(5, "reciprocity on the antipodally closed 32x32 grid, all built-in media");
    const auto set = DirectionSet::uniform_circle(32);
    double worst_ratio = 0.0;
    for (const auto* solver : {&disc96, &bump96}) {
        const auto samples = far_field_matrix(*solver, set, set);
        worst_ratio = std::max(worst_ratio, max_antipodal_residual(samples)
                                                / samples.values.cwiseAbs().maxCoeff());
    }
    {
        const LippmannSchwingerSolver absorbing(
            disc_medium({0.0, 0.0}, 1.0, cplx(1.5, 0.3), box_n(96)), disc96.wavenumber());
        const auto samples = far_field_matrix(absorbing, set, set);
        worst_ratio = std::max(worst_ratio, max_antipodal_residual(samples)
                                                / samples.values.cwiseAbs().maxCoeff());
    }
    c.clause("max antipodal residual / max |U| (disc, bump, absorbing disc)", worst_ratio, "<",
             1e-8);
    c.finish();
}

void criterion_6_pointwise(const LippmannSchwingerSolver& disc96) {
    Criterion c(6, "pointwise agreement of the two far field computation paths");
    std::mt19937_64 rng(23);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const UnitDirection xhat = UnitDirection::from_angle(2.0 * pi * uniform(rng));
        const UnitDirection theta = UnitDirection::from_angle(2.0 * pi * uniform(rng));
        const cplx via_T = far_field_via_factorization(disc96, xhat, theta);
        const auto sol = disc96.solve_scattering(theta);
        const cplx direct = far_field_from_solution(disc96.medium(), disc96.wavenumber(), sol, xhat);
        worst = std::max(worst, std::abs(via_T - direct)
                                    / std::max(std::abs(direct), std::abs(via_T)));
    }
    c.clause("max relative gap over 100 random pairs", worst, "<", 1e-10);
    c.finish();
}

void criterion_7_decay(const LippmannSchwingerSolver& disc96) {
    Criterion c(7, "joint-analyticity surrogate: Fourier decay of N=64 torus samples");
    const auto samples = sample_torus(disc96, 64);
    const auto report = fourier_decay(samples);
    c.clause("fitted decay rate tau", report.tau, ">", 0.0);
    c.clause("single-line fit residual (RMS, log10)", report.fit_rms_log10, "<", 1.0);
    c.note("the coefficient field carries two exponential populations: the rotation-invariant");
    c.note("main sequence on m+n=0 and grid-sampling harmonics ~3.5 decades below it, so the");
    c.note("single-line scatter is structural; floor scans over 1e-13..1e-6 give RMS 1.23-1.43");

    double maxc = 0.0, high = 0.0;
    for (int i = 0; i < report.n; ++i) {
        for (int j = 0; j < report.n; ++j) {
            const int s = std::abs(FourierDecayReport::frequency(i, report.n))
                          + std::abs(FourierDecayReport::frequency(j, report.n));
            const double mag = std::abs(report.coefficients(i, j));
            maxc = std::max(maxc, mag);
            if (s >= 48) high = std::max(high, mag);
        }
    }
    c.clause("coefficients with |m|+|n| >= 48, relative to max", high / maxc, "<", 1e-8);

    TorusSamples synthetic{64, Eigen::MatrixXcd(64, 64), disc96.wavenumber()};
    for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 64; ++j) {
            synthetic.values(i, j) =
                std::exp(std::cos(2.0 * pi * i / 64.0) + std::cos(2.0 * pi * j / 64.0));
        }
    }
    c.clause("synthetic entire-function tau", fourier_decay(synthetic).tau, ">=", 1.0);
    c.finish();
}

void criterion_8_taylor(const LippmannSchwingerSolver& disc96) {
    Criterion c(8, "single-point Taylor reconstruction (p=8, rho=0.1, distance 0.03)");
    const UnitDirection xhat0 = UnitDirection::from_angle(270.0 * pi / 180.0);
    const UnitDirection theta0 = UnitDirection::from_angle(54.0 * pi / 180.0);
    const auto model8 = taylor_coefficients(disc96, xhat0, theta0, 8, 0.1);
    const auto model2 = taylor_coefficients(disc96, xhat0, theta0, 2, 0.1);
    std::mt19937_64 rng(11);
    double worst = 0.0;
    int monotonic_failures = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const double dz = 0.03 * (2.0 * uniform(rng) - 1.0);
        const double dw = 0.03 * (2.0 * uniform(rng) - 1.0);
        const UnitDirection xh = stereo_inverse(ChartCoord(model8.z0 + dz), model8.chart_obs);
        const UnitDirection th = stereo_inverse(ChartCoord(model8.w0 + dw), model8.chart_inc);
        const cplx direct = far_field_via_factorization(disc96, xh, th);
        const double e8 = std::abs(taylor_evaluate(model8, xh, th) - direct);
        const double e2 = std::abs(taylor_evaluate(model2, xh, th) - direct);
        worst = std::max(worst, e8 / std::abs(direct));
        if (e8 > e2 + 1e-9) ++monotonic_failures;
    }
    c.clause("max relative reconstruction error at p=8", worst, "<", 1e-4);
    c.clause("points where p=8 is not better than p=2 (1e-9 slack)",
             static_cast<double>(monotonic_failures), "==", 0.0);
    c.finish();
}

void criterion_9_holomorphy(const LippmannSchwingerSolver& disc96) {
    Criterion c(9, "holomorphy of the extension: Cauchy-Riemann and mean value");
    const ComplexChartCoord w_fixed(cplx(0.2, 0.05));
    auto H = [&](cplx z) {
        return holomorphic_extension(disc96, ComplexChartCoord(z), w_fixed, ChartId::plus,
                                     ChartId::plus);
    };
    std::mt19937_64 rng(31);
    const double step = 1e-3;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const cplx z0(0.8 * (2.0 * uniform(rng) - 1.0), trial % 2 == 0 ? 0.1 : -0.1);
        const cplx dx = (H(z0 + step) - H(z0 - step)) / (2.0 * step);
        const cplx dy = (H(z0 + cplx(0.0, step)) - H(z0 - cplx(0.0, step))) / (2.0 * step);
        worst = std::max(worst, std::abs(dx + cplx(0.0, 1.0) * dy) / 2.0);
    }
    c.clause("max Cauchy-Riemann residual at 20 complex points", worst, "<", 1e-5);

    const UnitDirection xhat0 = UnitDirection::from_angle(270.0 * pi / 180.0);
    const UnitDirection theta0 = UnitDirection::from_angle(54.0 * pi / 180.0);
    const auto model0 = taylor_coefficients(disc96, xhat0, theta0, 0, 0.05);
    const cplx center = far_field_via_factorization(disc96, xhat0, theta0);
    c.clause("bicircle mean-value residual", std::abs(model0.coeff(0, 0) - center), "<", 1e-7);
    c.finish();
}

void criterion_10_counterexample() {
    Criterion c(10, "separate-but-not-joint analyticity of xy/(x^2+y^2)");
    const auto rep = counterexample_report(1e-3, 0.1, 41);
    double diag_err = 0.0;
    for (const double v : rep.diagonal_values) diag_err = std::max(diag_err, std::abs(v - 0.5));
    double axis_err = 0.0;
    for (const double v : rep.axis_values) axis_err = std::max(axis_err, std::abs(v));
    c.clause("diagonal samples equal 1/2 exactly", diag_err, "==", 0.0);
    c.clause("axis samples and origin equal 0 exactly",
             std::max(axis_err, std::abs(rep.origin_value)), "==", 0.0);
    c.clause("1-D restriction Taylor reproduction error",
             std::max(rep.restriction_max_error_x, rep.restriction_max_error_y), "<", 1e-6);
    c.clause("min over p<=10 of the bivariate fit diagonal error", rep.fit_min_diagonal_error,
             ">=", 0.4);
    c.finish();
}

void criterion_11_geometry() {
    Criterion c(11, "geometry suite over randomized sweeps (1000 samples per property)");
    std::mt19937_64 rng(2);
    double fwd_err = 0.0, inv_err = 0.0, invol_err = 0.0, restrict_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const ChartId chart = trial % 4 < 2 ? ChartId::plus : ChartId::minus;
        // random chart coordinate with |y| < 2
        ChartCoord y;
        do {
            y = d == 2 ? ChartCoord(4.0 * uniform(rng) - 2.0)
                       : ChartCoord(4.0 * uniform(rng) - 2.0, 4.0 * uniform(rng) - 2.0);
        } while (y.norm() >= 2.0);
        const UnitDirection x = stereo_inverse(y, chart);
        const ChartCoord y2 = stereo_forward(x, chart);
        for (int i = 0; i < y.dim; ++i) fwd_err = std::max(fwd_err, std::abs(y2[i] - y[i]));

        const UnitDirection x2 = stereo_inverse(stereo_forward(x, chart), chart);
        for (int i = 0; i < x.dim(); ++i) inv_err = std::max(inv_err, std::abs(x2[i] - x[i]));

        if (y.norm() > 1e-6) {
            const ChartCoord yy = transition(transition(y));
            for (int i = 0; i < y.dim; ++i) invol_err = std::max(invol_err, std::abs(yy[i] - y[i]));
        }

        const auto xc = stereo_inverse_complex(ComplexChartCoord::from_real(y), chart);
        for (int i = 0; i < x.dim(); ++i) restrict_err = std::max(restrict_err, std::abs(xc[i] - x[i]));
    }
    c.clause("chart roundtrip y -> x -> y", fwd_err, "<", 1e-12);
    c.clause("chart roundtrip x -> y -> x", inv_err, "<", 1e-12);
    c.clause("transition involution", invol_err, "<", 1e-12);
    c.clause("complex extension restricted to real coordinates", restrict_err, "<", 1e-14);
    c.finish();
}

} // namespace

int main() {
    std::printf("acceptance suite: disc/bump scattering laboratory\n\n");
    const auto t0 = std::chrono::steady_clock::now();

    std::unique_ptr<LippmannSchwingerSolver> disc96;
    criterion_1_oracle(disc96);
    criterion_2_normalization();
    {
        const LippmannSchwingerSolver bump96(
            bump_medium({0.0, 0.0}, 1.0, cplx(0.5, 0.0), box_n(96)), Wavenumber(2.0));
        criterion_3_factorization(*disc96, bump96);
        criterion_4_w_identity(*disc96);
        criterion_5_reciprocity(*disc96, bump96);
    }
    criterion_6_pointwise(*disc96);
    criterion_7_decay(*disc96);
    criterion_8_taylor(*disc96);
    criterion_9_holomorphy(*disc96);
    criterion_10_counterexample();
    criterion_11_geometry();

    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 11 criteria passed in %.1f s\n", 11 - g_failed_criteria, total);
    return g_failed_criteria;
}
