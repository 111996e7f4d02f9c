#include "fflab/farfield.hpp"

#include <cmath>
#include <sstream>

#include "fflab/errors.hpp"

namespace fflab {

DirectionSet DirectionSet::uniform_circle(int n) {
    if (n < 1) throw ValueError("DirectionSet: need at least one direction");
    DirectionSet set;
    set.directions.reserve(static_cast<std::size_t>(n));
    set.angles.reserve(static_cast<std::size_t>(n));
    set.weights.assign(static_cast<std::size_t>(n), 2.0 * pi / n);
    for (int j = 0; j < n; ++j) {
        const double alpha = 2.0 * pi * j / n;
        set.angles.push_back(alpha);
        set.directions.push_back(UnitDirection::from_angle(alpha));
    }
    return set;
}

int DirectionSet::antipode_index(int j) const {
    const int n = size();
    if (n % 2 != 0) throw ValueError("DirectionSet: antipodal closure requires even size");
    return (j + n / 2) % n;
}

cplx far_field_constant(int d, Wavenumber k) {
    if (d == 2) return std::polar(1.0 / std::sqrt(8.0 * pi * k.value()), pi / 4.0);
    if (d == 3) return cplx(1.0 / (4.0 * pi), 0.0);
    throw ValueError("far_field_constant: d must be 2 or 3");
}

cplx far_field_from_solution(const RefractiveIndexField& m, Wavenumber k,
                             const ScatterSolution& sol, const UnitDirection& xhat) {
    if (!(sol.grid == m.grid())) {
        throw ValueError("far_field_from_solution: solution grid does not match the medium");
    }
    const GridBox& grid = m.grid();
    const double kx = k.value() * xhat[0], ky = k.value() * xhat[1];
    cplx acc(0.0, 0.0);
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const cplx q = m.at(ix, iy) - 1.0;
            if (q == cplx(0.0, 0.0)) continue;
            const Vec2 y = grid.cell_center(ix, iy);
            const double phase = -(kx * y[0] + ky * y[1]);
            acc += q * sol.total[static_cast<std::size_t>(grid.index(ix, iy))]
                   * cplx(std::cos(phase), std::sin(phase));
        }
    }
    return far_field_constant(2, k) * k.value() * k.value() * grid.cell_area() * acc;
}

namespace {

// e^{-ik x^_i . y_s} for all observation directions and support points.
Eigen::MatrixXcd observation_exponentials(const DirectionSet& obs, double k,
                                          const std::vector<Vec2>& pts) {
    Eigen::MatrixXcd E(obs.size(), static_cast<Eigen::Index>(pts.size()));
    for (int i = 0; i < obs.size(); ++i) {
        const double kx = k * obs.directions[static_cast<std::size_t>(i)][0];
        const double ky = k * obs.directions[static_cast<std::size_t>(i)][1];
        for (std::size_t s = 0; s < pts.size(); ++s) {
            const double phase = -(kx * pts[s][0] + ky * pts[s][1]);
            E(i, static_cast<Eigen::Index>(s)) = cplx(std::cos(phase), std::sin(phase));
        }
    }
    return E;
}

void check_finite(const Eigen::MatrixXcd& U) {
    if (!U.allFinite()) {
        throw SingularMatrixError("far_field_matrix: non-finite far field entries");
    }
}

} // namespace

FarFieldSamples far_field_matrix(const LippmannSchwingerSolver& solver, const DirectionSet& obs,
                                 const DirectionSet& inc) {
    const Wavenumber k = solver.wavenumber();
    const double kv = k.value();
    const auto& pts = solver.support_points();
    const Eigen::Index ns = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXcd density(ns, inc.size());
    for (int j = 0; j < inc.size(); ++j) {
        Eigen::VectorXcd f(ns);
        const double kx = kv * inc.directions[static_cast<std::size_t>(j)][0];
        const double ky = kv * inc.directions[static_cast<std::size_t>(j)][1];
        for (Eigen::Index s = 0; s < ns; ++s) {
            const double phase = kx * pts[static_cast<std::size_t>(s)][0]
                                 + ky * pts[static_cast<std::size_t>(s)][1];
            f(s) = cplx(std::cos(phase), std::sin(phase));
        }
        const Eigen::VectorXcd v = solver.solve_source_support(f);
        density.col(j) = solver.support_contrast().cwiseProduct(f + v);
    }
    const Eigen::MatrixXcd E = observation_exponentials(obs, kv, pts);
    const cplx scale = far_field_constant(2, k) * kv * kv * solver.medium().grid().cell_area();
    FarFieldSamples out{obs, inc, scale * (E * density), k};
    check_finite(out.values);
    return out;
}

FarFieldSamples far_field_matrix(const RefractiveIndexField& m, Wavenumber k,
                                 const DirectionSet& obs, const DirectionSet& inc,
                                 const SolverConfig& cfg) {
    return far_field_matrix(LippmannSchwingerSolver(m, k, cfg), obs, inc);
}

GridField herglotz_apply(const HerglotzDensity& psi, const DirectionSet& inc, Wavenumber k,
                         const GridBox& grid) {
    if (psi.values.size() != static_cast<std::size_t>(inc.size())) {
        throw ValueError("herglotz_apply: density length does not match the direction set");
    }
    GridField out(grid);
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Vec2 y = grid.cell_center(ix, iy);
            cplx acc(0.0, 0.0);
            for (int j = 0; j < inc.size(); ++j) {
                const double phase = k.value() * (inc.directions[static_cast<std::size_t>(j)][0] * y[0]
                                                  + inc.directions[static_cast<std::size_t>(j)][1] * y[1]);
                acc += inc.weights[static_cast<std::size_t>(j)] * psi.values[static_cast<std::size_t>(j)]
                       * cplx(std::cos(phase), std::sin(phase));
            }
            out.values[static_cast<std::size_t>(grid.index(ix, iy))] = acc;
        }
    }
    return out;
}

cplx herglotz_adjoint(const GridField& phi, const UnitDirection& xhat, Wavenumber k) {
    const GridBox& grid = phi.grid;
    const double kx = k.value() * xhat[0], ky = k.value() * xhat[1];
    cplx acc(0.0, 0.0);
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const cplx v = phi.values[static_cast<std::size_t>(grid.index(ix, iy))];
            if (v == cplx(0.0, 0.0)) continue;
            const Vec2 y = grid.cell_center(ix, iy);
            const double phase = -(kx * y[0] + ky * y[1]);
            acc += v * cplx(std::cos(phase), std::sin(phase));
        }
    }
    return acc * grid.cell_area();
}

std::vector<cplx> apply_F(const FarFieldSamples& samples, const HerglotzDensity& g) {
    if (g.values.size() != static_cast<std::size_t>(samples.incidence.size())) {
        throw ValueError("apply_F: density length does not match the incidence set");
    }
    std::vector<cplx> out(static_cast<std::size_t>(samples.observation.size()), cplx(0.0, 0.0));
    for (int i = 0; i < samples.observation.size(); ++i) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < samples.incidence.size(); ++j) {
            acc += samples.incidence.weights[static_cast<std::size_t>(j)] * samples.values(i, j)
                   * g.values[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

std::vector<cplx> source_far_field(const LippmannSchwingerSolver& solver, const GridField& f,
                                   const DirectionSet& obs) {
    const Wavenumber k = solver.wavenumber();
    const Eigen::VectorXcd tf = solver.apply_T_support(solver.restrict_to_support(f));
    const auto& pts = solver.support_points();
    const Eigen::MatrixXcd E = observation_exponentials(obs, k.value(), pts);
    const cplx scale = far_field_constant(2, k) * solver.medium().grid().cell_area();
    std::vector<cplx> out(static_cast<std::size_t>(obs.size()), cplx(0.0, 0.0));
    if (tf.size() > 0) {
        const Eigen::VectorXcd w = scale * (E * tf);
        for (int i = 0; i < obs.size(); ++i) out[static_cast<std::size_t>(i)] = w(i);
    }
    return out;
}

std::vector<cplx> source_far_field(const RefractiveIndexField& m, Wavenumber k, const GridField& f,
                                   const DirectionSet& obs, const SolverConfig& cfg) {
    return source_far_field(LippmannSchwingerSolver(m, k, cfg), f, obs);
}

FactorizationCheck factorization_residual(const LippmannSchwingerSolver& solver,
                                          const DirectionSet& obs, const DirectionSet& inc,
                                          const HerglotzDensity& g) {
    const FarFieldSamples samples = far_field_matrix(solver, obs, inc);
    const std::vector<cplx> lhs = apply_F(samples, g);

    const GridField ag = herglotz_apply(g, inc, solver.wavenumber(), solver.medium().grid());
    const GridField tag = solver.apply_T(ag);
    const cplx c2 = far_field_constant(2, solver.wavenumber());

    double num = 0.0, den = 0.0;
    for (int i = 0; i < obs.size(); ++i) {
        const cplx rhs = c2 * herglotz_adjoint(tag, obs.directions[static_cast<std::size_t>(i)],
                                               solver.wavenumber());
        const double w = obs.weights[static_cast<std::size_t>(i)];
        num += w * std::norm(lhs[static_cast<std::size_t>(i)] - rhs);
        den += w * std::norm(lhs[static_cast<std::size_t>(i)]);
    }
    if (den == 0.0) return {true, 0.0};
    return {false, std::sqrt(num / den)};
}

FactorizationCheck factorization_residual(const RefractiveIndexField& m, Wavenumber k,
                                          const DirectionSet& obs, const DirectionSet& inc,
                                          const HerglotzDensity& g, const SolverConfig& cfg) {
    return factorization_residual(LippmannSchwingerSolver(m, k, cfg), obs, inc, g);
}

cplx far_field_via_factorization(const LippmannSchwingerSolver& solver, const UnitDirection& xhat,
                                 const UnitDirection& theta) {
    const GridField f = plane_wave_field(solver.wavenumber(), theta, solver.medium().grid());
    const GridField tf = solver.apply_T(f);
    return far_field_constant(2, solver.wavenumber()) * herglotz_adjoint(tf, xhat, solver.wavenumber());
}

cplx far_field_via_factorization(const RefractiveIndexField& m, Wavenumber k,
                                 const UnitDirection& xhat, const UnitDirection& theta,
                                 const SolverConfig& cfg) {
    return far_field_via_factorization(LippmannSchwingerSolver(m, k, cfg), xhat, theta);
}

cplx holomorphic_extension(const LippmannSchwingerSolver& solver, const ComplexChartCoord& z,
                           const ComplexChartCoord& w, ChartId chart_obs, ChartId chart_inc) {
    if (!in_validity_region(z) || !in_validity_region(w)) {
        throw DomainError("holomorphic_extension: coordinates outside the validity region V");
    }
    const ComplexDirection dx = stereo_inverse_complex(z, chart_obs);
    const ComplexDirection dt = stereo_inverse_complex(w, chart_inc);
    const double kv = solver.wavenumber().value();
    const auto& pts = solver.support_points();
    const Eigen::Index ns = static_cast<Eigen::Index>(pts.size());
    if (ns == 0) return cplx(0.0, 0.0);
    const cplx ik(0.0, kv);
    Eigen::VectorXcd f(ns);
    for (Eigen::Index s = 0; s < ns; ++s) {
        const auto& y = pts[static_cast<std::size_t>(s)];
        f(s) = std::exp(ik * (dt[0] * y[0] + dt[1] * y[1]));  // [G'_theta(w)](y)
    }
    const Eigen::VectorXcd tf = solver.apply_T_support(f);
    cplx acc(0.0, 0.0);
    for (Eigen::Index s = 0; s < ns; ++s) {
        const auto& y = pts[static_cast<std::size_t>(s)];
        acc += std::exp(-ik * (dx[0] * y[0] + dx[1] * y[1])) * tf(s);  // [G_x^(z)](y)
    }
    return far_field_constant(2, solver.wavenumber()) * solver.medium().grid().cell_area() * acc;
}

cplx holomorphic_extension(const RefractiveIndexField& m, Wavenumber k,
                           const ComplexChartCoord& z, const ComplexChartCoord& w,
                           ChartId chart_obs, ChartId chart_inc, const SolverConfig& cfg) {
    return holomorphic_extension(LippmannSchwingerSolver(m, k, cfg), z, w, chart_obs, chart_inc);
}

} // namespace fflab
